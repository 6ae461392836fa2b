// Copyright 2026 The msax Authors
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

#include "msax/error.hpp"

namespace msax {

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kIncompatibleManifolds:
    case ErrorCode::kIncompatibleArtifact:
    case ErrorCode::kVersion:
      return 2;
    case ErrorCode::kIo:
      return 3;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kValidation:
    case ErrorCode::kInjectivity:
    case ErrorCode::kDegenerate:
      return 1;
  }
  return 1;
}

}  // namespace msax
