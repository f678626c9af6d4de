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

// Little-endian primitive encoding shared by the dataset and scores formats.

#include "dbbeam/errors.hpp"

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

namespace dbbeam::detail
{

class ByteWriter
{
  public:
    explicit ByteWriter(std::vector<std::uint8_t> &out) : out_(out) {}

    void bytes(const char *data, std::size_t n) { out_.insert(out_.end(), data, data + n); }

    template <typename T>
    void uint(T v)
    {
        for (std::size_t i = 0; i < sizeof(T); ++i)
            out_.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(v) >> (8 * i)));
    }

    void u16(std::uint16_t v) { uint(v); }
    void u32(std::uint32_t v) { uint(v); }
    void i32(std::int32_t v) { uint(static_cast<std::uint32_t>(v)); }
    void f32(float v) { uint(std::bit_cast<std::uint32_t>(v)); }
    void f64(double v) { uint(std::bit_cast<std::uint64_t>(v)); }

  private:
    std::vector<std::uint8_t> &out_;
};

class ByteReader
{
  public:
    explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

    std::size_t offset() const { return pos_; }
    std::size_t remaining() const { return in_.size() - pos_; }

    void require(std::size_t n, const char *what) const
    {
        if (remaining() < n)
            throw FormatError(std::string("truncated ") + what, pos_);
    }

    template <typename T>
    T uint()
    {
        require(sizeof(T), "field");
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i)
            v |= static_cast<std::uint64_t>(in_[pos_ + i]) << (8 * i);
        pos_ += sizeof(T);
        return static_cast<T>(v);
    }

    std::uint16_t u16() { return uint<std::uint16_t>(); }
    std::uint32_t u32() { return uint<std::uint32_t>(); }
    std::int32_t i32() { return static_cast<std::int32_t>(uint<std::uint32_t>()); }
    float f32() { return std::bit_cast<float>(uint<std::uint32_t>()); }
    double f64() { return std::bit_cast<double>(uint<std::uint64_t>()); }

    bool match(const char *magic, std::size_t n)
    {
        if (remaining() < n || std::memcmp(in_.data() + pos_, magic, n) != 0)
            return false;
        pos_ += n;
        return true;
    }

  private:
    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

} // namespace dbbeam::detail
