//  Copyright 2026 The nabla Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef NABLA_ERROR_HPP_
#define NABLA_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nabla {

/// Malformed or out-of-domain input (unknown identifiers, invalid tables).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Text that could not be parsed. Line and column are 1-based; 0 means unknown.
class ParseError : public InputError {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column = 0)
      : InputError(msg), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A configured size bound was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called on a value outside its declared domain.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nabla

#endif  // NABLA_ERROR_HPP_
