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

#ifndef SAS_SAS_H
#define SAS_SAS_H

/*
 * C interface of the solver. Objects are opaque handles released with the
 * matching *_free function. Every call returns a status; on failure the
 * message is available from sas_last_error() until the next call on the same
 * thread. Strings returned through char** are owned by the caller and
 * released with sas_string_free(). Vertex ids are the dense ids assigned on
 * load (file ids in ascending order).
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define SAS_API __attribute__((visibility("default")))
#else
#define SAS_API
#endif

typedef enum sas_status {
    SAS_OK = 0,
    SAS_E_ARGUMENT = 1,     /* null pointer or unknown option */
    SAS_E_PARSE = 2,        /* malformed text or JSON */
    SAS_E_VALIDATION = 3,   /* well-formed input violating a model invariant */
    SAS_E_PRECONDITION = 4, /* operation not applicable to this input */
    SAS_E_BOUND = 5,        /* an explicit size bound was exceeded */
    SAS_E_INTERNAL = 6
} sas_status;

typedef enum sas_verdict { SAS_ACCEPTED = 0, SAS_REJECTED = 1, SAS_MALFORMED = 2 } sas_verdict;

typedef struct sas_game sas_game;
typedef struct sas_solution sas_solution;

typedef struct sas_random_params {
    size_t n;
    unsigned branching;       /* successors per vertex in [1, branching] */
    unsigned random_permille; /* expected share of random vertices */
    uint32_t d1, d2;          /* largest priorities */
} sas_random_params;

typedef struct sas_sim_options {
    uint64_t seed;
    uint64_t steps;
    uint64_t runs;
    uint64_t late_after;
    uint32_t start;
    unsigned jobs;
    int per_run; /* include per-run records in the report */
} sas_sim_options;

SAS_API const char* sas_version(void);
SAS_API const char* sas_last_error(void);
SAS_API void sas_string_free(char* s);

/* games */
SAS_API sas_status sas_game_parse(const char* spg_text, sas_game** out);
SAS_API sas_status sas_game_from_json(const char* json, sas_game** out);
SAS_API sas_status sas_game_random(const sas_random_params* p, uint64_t seed, sas_game** out);
SAS_API void sas_game_free(sas_game* g);
SAS_API size_t sas_game_vertex_count(const sas_game* g);
SAS_API sas_status sas_game_to_spg(const sas_game* g, char** out);
SAS_API sas_status sas_game_to_json(const sas_game* g, char** out);
/* region_json: array of ids or null; strategy_json: a memoryless strategy or null */
SAS_API sas_status sas_game_to_dot(const sas_game* g, const char* region_json, const char* strategy_json, char** out);

/* solving */
SAS_API sas_status sas_solve(const sas_game* g, sas_solution** out);
SAS_API void sas_solution_free(sas_solution* s);
SAS_API sas_status sas_solution_is_winning(const sas_solution* s, uint32_t v, int* winning);
/* {"schema":1,"winning":[..],"losing":[..],"trace_digest":hex} */
SAS_API sas_status sas_solution_to_json(const sas_solution* s, char** out);
SAS_API sas_status sas_solution_trace_json(const sas_solution* s, char** out);

/*
 * Strategy synthesis. kind: "auto", "counter", "memoryless" (coBuchi Omega1),
 * "finite" (Buchi Omega2) or "spoiler" (player 2 on the losing region).
 * schedule: "geometric:N0,base" or "table:a,b,..." for counter strategies, or null.
 */
SAS_API sas_status sas_synthesize(const sas_game* g, const sas_solution* s, const char* kind, const char* schedule, char** out);

/* adversary_json: memoryless player-2 strategy or null for uniform choices */
SAS_API sas_status sas_simulate(const sas_game* g, const char* strategy_json, const char* adversary_json,
                                const sas_sim_options* opt, char** out);

/* Exact check of a finite-memory strategy from every vertex of region_json (null: the strategy's own claim). */
SAS_API sas_status sas_check_strategy(const sas_game* g, const char* strategy_json, const char* region_json, int* ok, char** report);

/* certificates */
SAS_API sas_status sas_certify(const sas_game* g, const sas_solution* s, char** out);
SAS_API sas_status sas_verify_certificate(const sas_game* g, const char* certificate_json, sas_verdict* verdict, char** diagnostic);

/*
 * Automata. mode: "conjunction" or "disjunction"; orientation: null or "auto",
 * "direct", "swapped". info receives sizes and the chosen register layout.
 */
SAS_API sas_status sas_product(const char* d2pw_text, const char* mode, const char* orientation, char** dpw_text, char** info);
SAS_API sas_status sas_d2pw_random(size_t states, size_t letters, uint32_t d1, uint32_t d2, uint64_t seed, char** out);

/* oracles: *agree is 1 when the solver and the brute-force oracle coincide */
SAS_API sas_status sas_oracle_dpw_equiv(const char* d2pw_text, const char* dpw_text, size_t max_states, int* agree, char** report);
SAS_API sas_status sas_oracle_sas(const sas_game* g, uint64_t max_strategies, int* agree, char** report);
SAS_API sas_status sas_oracle_as_parity(const sas_game* g, uint64_t max_strategies, int* agree, char** report);
/* count random games from consecutive seeds, compared on jobs threads */
SAS_API sas_status sas_oracle_batch(const sas_random_params* p, uint64_t seed, uint64_t count, uint64_t max_strategies,
                                    unsigned jobs, int* agree, char** report);

#ifdef __cplusplus
}
#endif

#endif
