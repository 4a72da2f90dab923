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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace sas {

using VertexId = std::uint32_t;
using Priority = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/** Malformed text input. line is 1-based, 0 when unknown. */
class ParseError : public Error
{
  public:
    ParseError(const std::string& msg, std::size_t line)
        : Error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) { }
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/** Well-formed input that violates a model invariant at some vertex (or state). */
class ValidationError : public Error
{
  public:
    ValidationError(const std::string& msg, VertexId vertex)
        : Error("vertex " + std::to_string(vertex) + ": " + msg), vertex_(vertex) { }
    VertexId vertex() const { return vertex_; }

  private:
    VertexId vertex_;
};

/** Operation called outside its precondition. */
class PreconditionError : public Error
{
  public:
    explicit PreconditionError(const std::string& msg, VertexId vertex = kNoVertex)
        : Error(vertex == kNoVertex ? msg : "vertex " + std::to_string(vertex) + ": " + msg), vertex_(vertex) { }
    VertexId vertex() const { return vertex_; }

  private:
    VertexId vertex_;
};

/** Enumeration or construction size limit hit before any allocation. */
class BoundExceeded : public Error
{
  public:
    using Error::Error;
};

} // namespace sas
