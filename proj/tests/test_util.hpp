/*
 * Copyright 2026 The sasgame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "sas/game_io.hpp"

#ifndef SAS_SOURCE_DIR
#define SAS_SOURCE_DIR "."
#endif

namespace sas::test {

inline std::string
read_file(const std::string& rel)
{
    std::ifstream in(std::string(SAS_SOURCE_DIR) + "/" + rel);
    if (!in) throw std::runtime_error("cannot open " + rel);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline StochasticGame
load_game(const std::string& rel)
{
    return parse_game(read_file(rel));
}

} // namespace sas::test
