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

#include "tcp/error.hpp"

namespace tcp {
namespace {

std::string render(ErrorKind kind, const std::string& message,
                   const SourcePos& pos) {
  std::string out = to_string(kind);
  out += ": ";
  if (pos.line != 0) {
    out += std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": ";
  }
  out += message;
  return out;
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSortMismatch: return "SortMismatch";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kUnknownName: return "UnknownName";
    case ErrorKind::kUnknownAction: return "UnknownAction";
    case ErrorKind::kMissingTau: return "MissingTau";
    case ErrorKind::kSchemaError: return "SchemaError";
    case ErrorKind::kUnknownState: return "UnknownState";
    case ErrorKind::kStateBoundExceeded: return "StateBoundExceeded";
    case ErrorKind::kDepthExceeded: return "DepthExceeded";
    case ErrorKind::kNotLight: return "NotLight";
    case ErrorKind::kAlphabetMismatch: return "AlphabetMismatch";
  }
  return "Error";
}

Error::Error(ErrorKind kind, std::string message, SourcePos pos)
    : std::runtime_error(render(kind, message, pos)),
      kind_(kind),
      message_(std::move(message)),
      pos_(pos) {}

}  // namespace tcp
