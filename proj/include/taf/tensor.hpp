#pragma once

#include <cmath>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "taf/common.hpp"

namespace taf {

inline std::string shape_str(const std::vector<int>& s) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << "]";
  return os.str();
}

// Dense row-major tensor. Copies are shallow (shared buffer); tensors are
// treated as immutable once handed to a Tape. clone() gives a deep copy.
template <typename T>
class Tensor {
 public:
  Tensor() = default;

  explicit Tensor(std::vector<int> shape) : shape_(std::move(shape)) {
    buf_ = std::make_shared<std::vector<T>>(size_t(count(shape_)), T(0));
  }

  Tensor(std::vector<int> shape, std::vector<T> values) : shape_(std::move(shape)) {
    if (int64_t(values.size()) != count(shape_))
      throw ShapeError("tensor init: " + std::to_string(values.size()) +
                       " values for shape " + shape_str(shape_));
    buf_ = std::make_shared<std::vector<T>>(std::move(values));
  }

  static Tensor zeros(std::vector<int> shape) { return Tensor(std::move(shape)); }

  static Tensor full(std::vector<int> shape, T v) {
    Tensor t(std::move(shape));
    for (auto& x : *t.buf_) x = v;
    return t;
  }

  static Tensor scalar(T v) { return Tensor({1}, {v}); }

  bool defined() const { return buf_ != nullptr; }
  const std::vector<int>& shape() const { return shape_; }
  int rank() const { return int(shape_.size()); }
  int dim(int i) const { return shape_[size_t(i)]; }
  int64_t numel() const { return buf_ ? int64_t(buf_->size()) : 0; }

  T* data() { return buf_->data(); }
  const T* data() const { return buf_->data(); }
  T& operator[](int64_t i) { return (*buf_)[size_t(i)]; }
  const T& operator[](int64_t i) const { return (*buf_)[size_t(i)]; }

  // Flat index for [N,C,H,W] tensors.
  int64_t idx4(int n, int c, int h, int w) const {
    return ((int64_t(n) * shape_[1] + c) * shape_[2] + h) * shape_[3] + w;
  }

  T item() const {
    if (numel() != 1)
      throw ShapeError("item(): tensor has " + std::to_string(numel()) + " elements");
    return (*buf_)[0];
  }

  bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

  Tensor clone() const {
    Tensor t;
    t.shape_ = shape_;
    t.buf_ = std::make_shared<std::vector<T>>(*buf_);
    return t;
  }

  template <typename U>
  Tensor<U> cast() const {
    std::vector<U> v(size_t(numel()));
    for (int64_t i = 0; i < numel(); ++i) v[size_t(i)] = U((*buf_)[size_t(i)]);
    return Tensor<U>(shape_, std::move(v));
  }

  bool all_finite() const {
    for (const T& x : *buf_)
      if (!std::isfinite(double(x))) return false;
    return true;
  }

  static int64_t count(const std::vector<int>& shape) {
    int64_t n = 1;
    for (int d : shape) {
      if (d <= 0) throw ShapeError("non-positive dimension in shape " + shape_str(shape));
      n *= d;
    }
    return n;
  }

 private:
  std::vector<int> shape_;
  std::shared_ptr<std::vector<T>> buf_;
};

// Label maps are stored as u8 tensors ([H,W] or [N,H,W]); 255 = ignore.
using LabelMap = Tensor<uint8_t>;
inline constexpr int kIgnoreLabel = 255;

}  // namespace taf
