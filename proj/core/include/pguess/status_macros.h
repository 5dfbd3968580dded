// Copyright 2026 The pguess Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PGUESS_STATUS_MACROS_H_
#define PGUESS_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define PGUESS_STATUS_CONCAT_INNER_(a, b) a##b
#define PGUESS_STATUS_CONCAT_(a, b) PGUESS_STATUS_CONCAT_INNER_(a, b)

// Returns early from the enclosing function when `expr` is not OK.
#define PGUESS_RETURN_IF_ERROR(expr)            \
  do {                                          \
    const absl::Status _pguess_status = (expr); \
    if (!_pguess_status.ok()) {                 \
      return _pguess_status;                    \
    }                                           \
  } while (false)

#define PGUESS_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, rexpr) \
  auto tmp = (rexpr);                                  \
  if (!tmp.ok()) {                                     \
    return tmp.status();                               \
  }                                                    \
  lhs = std::move(tmp).value()

// Evaluates `rexpr` (a StatusOr) and either assigns the value to `lhs` or
// returns the error.
#define PGUESS_ASSIGN_OR_RETURN(lhs, rexpr) \
  PGUESS_ASSIGN_OR_RETURN_IMPL_(            \
      PGUESS_STATUS_CONCAT_(_pguess_statusor_, __LINE__), lhs, rexpr)

#endif  // PGUESS_STATUS_MACROS_H_
