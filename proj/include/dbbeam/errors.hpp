// SPDX-License-Identifier: Apache-2.0
//
// dbbeam - dual-band channel synthesis and hybrid beam selection toolkit
// Copyright (C) 2026 The dbbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace dbbeam
{

// Invalid scenario or run configuration. Carries the offending key and,
// for file-based configs, the 1-based line number.
class ConfigError : public std::runtime_error
{
  public:
    explicit ConfigError(const std::string &message, std::string key = {}, std::size_t line = 0)
        : std::runtime_error(message), key_(std::move(key)), line_(line)
    {
    }

    const std::string &key() const { return key_; }
    std::size_t line() const { return line_; }

  private:
    std::string key_;
    std::size_t line_;
};

// Malformed dataset or scores file.
class FormatError : public std::runtime_error
{
  public:
    FormatError(const std::string &message, std::uint64_t offset,
                std::optional<std::size_t> sample_index = std::nullopt)
        : std::runtime_error(message + " (at byte offset " + std::to_string(offset) +
                             (sample_index ? ", sample " + std::to_string(*sample_index) : std::string()) + ")"),
          offset_(offset), sample_index_(sample_index)
    {
    }

    std::uint64_t offset() const { return offset_; }
    std::optional<std::size_t> sample_index() const { return sample_index_; }

  private:
    std::uint64_t offset_;
    std::optional<std::size_t> sample_index_;
};

// Predictions that do not line up with the dataset they are evaluated on.
class AlignmentError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace dbbeam
