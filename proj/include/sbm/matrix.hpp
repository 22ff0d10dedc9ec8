#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sbm {

/// Dense row-major matrix. Desk-scale n (<= ~2048) keeps dense storage
/// the simple, cache-friendly choice.
template <class T>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, T value = T{})
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, value) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative dimension");
    }

    static Mat square(int n, T value = T{}) { return Mat(n, n, value); }

    T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    bool same_shape(const Mat& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

/// k x k block connection probabilities (Q). Entries in [0,1].
using ConnectivityMatrix = Mat<double>;

/// n x n edge probabilities (theta). Entries in [0,1].
using EdgeProbabilityMatrix = Mat<double>;

/// n x n binary observations, directed with self-loops.
using AdjacencyMatrix = Mat<std::uint8_t>;

inline void require_same_shape(const Mat<double>& a, const Mat<double>& b, const char* what) {
    if (!a.same_shape(b)) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

} // namespace sbm
