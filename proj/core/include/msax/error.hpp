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

#ifndef MSAX_ERROR_HPP
#define MSAX_ERROR_HPP

#include <stdexcept>
#include <string>

namespace msax {

enum class ErrorCode {
  kInvalidArgument,
  kValidation,
  kIncompatibleManifolds,
  kInjectivity,
  kDegenerate,
  kIncompatibleArtifact,
  kVersion,
  kIo,
};

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& what)
      : Error(ErrorCode::kInvalidArgument, what) {}
};

/// A point, sequence or file failed its structural invariants.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorCode::kValidation, what) {}
};

class IncompatibleManifoldsError : public Error {
 public:
  explicit IncompatibleManifoldsError(const std::string& what)
      : Error(ErrorCode::kIncompatibleManifolds, what) {}
};

/// Input lies outside the injectivity radius (cut locus, antipodal points).
class InjectivityError : public Error {
 public:
  explicit InjectivityError(const std::string& what)
      : Error(ErrorCode::kInjectivity, what) {}
};

/// A projection or mean has no unique answer (rank loss, eigen-gap collapse).
class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& what)
      : Error(ErrorCode::kDegenerate, what) {}
};

/// Artifacts that do not belong together (codebook id mismatch, wrong kind).
class IncompatibleArtifactError : public Error {
 public:
  explicit IncompatibleArtifactError(const std::string& what)
      : Error(ErrorCode::kIncompatibleArtifact, what) {}
};

class VersionError : public Error {
 public:
  explicit VersionError(const std::string& what)
      : Error(ErrorCode::kVersion, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::kIo, what) {}
};

/// Process exit code for the CLI: 1 validation, 2 incompatible artifact, 3 I/O.
int exit_code(ErrorCode code) noexcept;

}  // namespace msax

#endif  // MSAX_ERROR_HPP
