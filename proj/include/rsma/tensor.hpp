// Copyright (c) 2026 The geoleo-rsma Authors
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

#include <cassert>
#include <cstddef>
#include <vector>

namespace rsma {

// Dense row-major 2-D array indexed (beam, subcarrier) or (user, subcarrier).
template <typename T>
class Grid2 {
public:
    Grid2() = default;
    Grid2(std::size_t rows, std::size_t cols, T init = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, init) {}

    T& operator()(std::size_t r, std::size_t c) {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }
    const T& operator()(std::size_t r, std::size_t c) const {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }
    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    void fill(T v) { data_.assign(data_.size(), v); }

    bool operator==(const Grid2&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

// Dense 3-D array indexed (beam m, user u, subcarrier k).
template <typename T>
class Grid3 {
public:
    Grid3() = default;
    Grid3(std::size_t beams, std::size_t users, std::size_t subcarriers, T init = T{})
        : beams_(beams), users_(users), subcarriers_(subcarriers),
          data_(beams * users * subcarriers, init) {}

    T& operator()(std::size_t m, std::size_t u, std::size_t k) {
        assert(m < beams_ && u < users_ && k < subcarriers_);
        return data_[(m * users_ + u) * subcarriers_ + k];
    }
    const T& operator()(std::size_t m, std::size_t u, std::size_t k) const {
        assert(m < beams_ && u < users_ && k < subcarriers_);
        return data_[(m * users_ + u) * subcarriers_ + k];
    }

    std::size_t beams() const { return beams_; }
    std::size_t users() const { return users_; }
    std::size_t subcarriers() const { return subcarriers_; }
    bool empty() const { return data_.empty(); }
    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    void fill(T v) { data_.assign(data_.size(), v); }

    bool operator==(const Grid3&) const = default;

private:
    std::size_t beams_ = 0;
    std::size_t users_ = 0;
    std::size_t subcarriers_ = 0;
    std::vector<T> data_;
};

} // namespace rsma
