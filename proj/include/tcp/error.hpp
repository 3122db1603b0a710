// Copyright 2026 The TCP Engine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tcp {

enum class ErrorKind {
  kSortMismatch,
  kParseError,
  kUnknownName,
  kUnknownAction,
  kMissingTau,
  kSchemaError,
  kUnknownState,
  kStateBoundExceeded,
  kDepthExceeded,
  kNotLight,
  kAlphabetMismatch,
};

const char* to_string(ErrorKind kind);

struct SourcePos {
  std::size_t line = 0;  // 1-based; 0 means "no position"
  std::size_t column = 0;
};

// Base of every error raised by the engine. what() renders as
// "Kind: [line:col: ]message".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, SourcePos pos = {});

  ErrorKind kind() const { return kind_; }
  const std::string& message() const { return message_; }
  const SourcePos& pos() const { return pos_; }
  bool has_pos() const { return pos_.line != 0; }

 private:
  ErrorKind kind_;
  std::string message_;
  SourcePos pos_;
};

}  // namespace tcp
