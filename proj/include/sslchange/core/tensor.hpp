#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "sslchange/core/error.hpp"

namespace sslchange {

// Dense row-major tensor, up to 4 dims in practice (N,C,H,W). Copies share
// storage; clone() gives an independent buffer.
template <typename T>
class Tensor {
 public:
  Tensor() = default;

  explicit Tensor(std::vector<int> shape) : shape_(std::move(shape)) {
    data_ = std::make_shared<std::vector<T>>(static_cast<size_t>(numel()), T(0));
  }

  Tensor(std::vector<int> shape, std::vector<T> values) : shape_(std::move(shape)) {
    if (static_cast<int64_t>(values.size()) != numel())
      throw_shape("tensor init: value count does not match shape");
    data_ = std::make_shared<std::vector<T>>(std::move(values));
  }

  static Tensor zeros(std::vector<int> shape) { return Tensor(std::move(shape)); }

  static Tensor full(std::vector<int> shape, T v) {
    Tensor t(std::move(shape));
    std::fill(t.begin(), t.end(), v);
    return t;
  }

  static Tensor scalar(T v) { return full({1}, v); }

  const std::vector<int>& shape() const { return shape_; }
  int dim(int i) const { return shape_.at(static_cast<size_t>(i)); }
  int ndim() const { return static_cast<int>(shape_.size()); }

  int64_t numel() const {
    int64_t n = 1;
    for (int d : shape_) n *= d;
    return shape_.empty() ? 0 : n;
  }

  bool defined() const { return static_cast<bool>(data_); }

  T* data() { return data_->data(); }
  const T* data() const { return data_->data(); }
  T* begin() { return data(); }
  T* end() { return data() + numel(); }
  const T* begin() const { return data(); }
  const T* end() const { return data() + numel(); }

  T& operator[](int64_t i) { return (*data_)[static_cast<size_t>(i)]; }
  const T& operator[](int64_t i) const { return (*data_)[static_cast<size_t>(i)]; }

  // (n,c,h,w) accessor for 4-d tensors; (n,d) for 2-d.
  T& at(int n, int c, int h, int w) {
    return (*data_)[((static_cast<int64_t>(n) * shape_[1] + c) * shape_[2] + h) * shape_[3] + w];
  }
  const T& at(int n, int c, int h, int w) const {
    return (*data_)[((static_cast<int64_t>(n) * shape_[1] + c) * shape_[2] + h) * shape_[3] + w];
  }
  T& at(int n, int d) { return (*data_)[static_cast<int64_t>(n) * shape_[1] + d]; }
  const T& at(int n, int d) const { return (*data_)[static_cast<int64_t>(n) * shape_[1] + d]; }

  Tensor clone() const {
    Tensor t;
    t.shape_ = shape_;
    t.data_ = std::make_shared<std::vector<T>>(*data_);
    return t;
  }

  Tensor reshaped(std::vector<int> shape) const {
    Tensor t;
    t.shape_ = std::move(shape);
    int64_t n = 1;
    for (int d : t.shape_) n *= d;
    if (n != numel()) throw_shape("reshape: element count mismatch");
    t.data_ = data_;
    return t;
  }

  void fill(T v) { std::fill(begin(), end(), v); }

  bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

  bool all_finite() const {
    for (const T& v : *data_)
      if (!std::isfinite(static_cast<double>(v))) return false;
    return true;
  }

  std::string shape_str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < shape_.size(); ++i) os << (i ? "," : "") << shape_[i];
    os << ")";
    return os.str();
  }

 private:
  std::vector<int> shape_;
  std::shared_ptr<std::vector<T>> data_;
};

template <typename T>
double sum_of(const Tensor<T>& t) {
  double s = 0;
  for (const T* p = t.begin(); p != t.end(); ++p) s += static_cast<double>(*p);
  return s;
}

template <typename T>
double mean_of(const Tensor<T>& t) {
  return t.numel() ? sum_of(t) / static_cast<double>(t.numel()) : 0.0;
}

}  // namespace sslchange
