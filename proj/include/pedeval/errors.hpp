// Copyright 2026 The PedEval Authors. All Rights Reserved.
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

#ifndef PEDEVAL_ERRORS_HPP_
#define PEDEVAL_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pedeval {

// Base error. exit_code() maps onto the CLI contract:
// 2 validation, 3 join, 4 io.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
  virtual int exit_code() const noexcept { return 2; }
};

class ValidationError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

class JoinError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

class IoError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

// File could not be parsed at all.
class MalformedFile : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Parsed fine but violates the schema; carries every offending item.
class SchemaViolation : public ValidationError {
 public:
  SchemaViolation(const std::string& msg, std::vector<std::string> items)
      : ValidationError(msg), items_(std::move(items)) {}
  const std::vector<std::string>& items() const noexcept { return items_; }

 private:
  std::vector<std::string> items_;
};

// All violations are instance.video_id values with no matching video.
class DanglingVideoRef : public SchemaViolation {
 public:
  using SchemaViolation::SchemaViolation;
};

class MalformedLine : public ValidationError {
 public:
  MalformedLine(std::size_t line_number, const std::string& msg)
      : ValidationError("line " + std::to_string(line_number) + ": " + msg),
        line_number_(line_number) {}
  std::size_t line_number() const noexcept { return line_number_; }

 private:
  std::size_t line_number_;
};

class DuplicatePrediction : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ArityMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyInput : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class OutOfRangeTte : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SchemeTaskMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InconsistentGroundTruth : public ValidationError {
 public:
  InconsistentGroundTruth(const std::string& ped_id, const std::string& msg)
      : ValidationError(msg), ped_id_(ped_id) {}
  const std::string& ped_id() const noexcept { return ped_id_; }

 private:
  std::string ped_id_;
};

class MissingSection : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class MissingPrediction : public JoinError {
 public:
  MissingPrediction(const std::string& msg, std::vector<std::string> ids)
      : JoinError(msg), sample_ids_(std::move(ids)) {}
  const std::vector<std::string>& sample_ids() const noexcept {
    return sample_ids_;
  }

 private:
  std::vector<std::string> sample_ids_;
};

class OrphanPrediction : public JoinError {
 public:
  OrphanPrediction(const std::string& msg, std::vector<std::string> ids)
      : JoinError(msg), sample_ids_(std::move(ids)) {}
  const std::vector<std::string>& sample_ids() const noexcept {
    return sample_ids_;
  }

 private:
  std::vector<std::string> sample_ids_;
};

class JoinMismatch : public JoinError {
 public:
  using JoinError::JoinError;
};

class IoFailure : public IoError {
 public:
  using IoError::IoError;
};

}  // namespace pedeval

#endif  // PEDEVAL_ERRORS_HPP_
