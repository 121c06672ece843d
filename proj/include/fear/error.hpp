/*
 * Copyright 2026 The fear-grid Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FEAR_ERROR_HPP_
#define FEAR_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace fear {

enum class ErrorKind {
  kInvalidScenario,
  kUnknownAgent,
  kInconsistentMdr,
  kMalformedDocument,
  kSchemaViolation,
  kInvalidParams,
};

inline std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidScenario:
      return "invalid-scenario";
    case ErrorKind::kUnknownAgent:
      return "unknown-agent";
    case ErrorKind::kInconsistentMdr:
      return "inconsistent-mdr";
    case ErrorKind::kMalformedDocument:
      return "malformed-document";
    case ErrorKind::kSchemaViolation:
      return "schema-violation";
    case ErrorKind::kInvalidParams:
      return "invalid-params";
  }
  return "unknown";
}

// Base error for every domain failure raised by the library. `location` holds
// a JSON pointer or byte offset for document errors and is empty otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string location = {})
      : std::runtime_error(location.empty() ? message
                                            : location + ": " + message),
        kind_(kind),
        message_(message),
        location_(std::move(location)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& message() const { return message_; }
  const std::string& location() const { return location_; }

 private:
  ErrorKind kind_;
  std::string message_;
  std::string location_;
};

}  // namespace fear

#endif  // FEAR_ERROR_HPP_
