#pragma once

#include <Eigen/Core>

#include "sslchange/core/tensor.hpp"

namespace sslchange::detail {

template <typename T>
using EMat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using EMap = Eigen::Map<EMat<T>>;
template <typename T>
using ECMap = Eigen::Map<const EMat<T>>;

struct ConvGeom {
  int cin, hin, win;
  int kh, kw, stride, pad;
  int hout, wout;

  ConvGeom(int cin_, int hin_, int win_, int kh_, int kw_, int stride_, int pad_)
      : cin(cin_), hin(hin_), win(win_), kh(kh_), kw(kw_), stride(stride_), pad(pad_) {
    hout = (hin + 2 * pad - kh) / stride + 1;
    wout = (win + 2 * pad - kw) / stride + 1;
  }

  int64_t col_rows() const { return static_cast<int64_t>(cin) * kh * kw; }
  int64_t col_cols() const { return static_cast<int64_t>(hout) * wout; }
};

// Unfolds one image (cin,hin,win) into (cin*kh*kw, hout*wout).
template <typename T>
void im2col(const T* img, const ConvGeom& g, T* cols) {
  for (int c = 0; c < g.cin; ++c) {
    const T* plane = img + static_cast<int64_t>(c) * g.hin * g.win;
    for (int ki = 0; ki < g.kh; ++ki) {
      for (int kj = 0; kj < g.kw; ++kj) {
        T* row = cols + ((static_cast<int64_t>(c) * g.kh + ki) * g.kw + kj) * g.col_cols();
        for (int oh = 0; oh < g.hout; ++oh) {
          int ih = oh * g.stride - g.pad + ki;
          T* out = row + static_cast<int64_t>(oh) * g.wout;
          if (ih < 0 || ih >= g.hin) {
            std::fill(out, out + g.wout, T(0));
            continue;
          }
          const T* src = plane + static_cast<int64_t>(ih) * g.win;
          for (int ow = 0; ow < g.wout; ++ow) {
            int iw = ow * g.stride - g.pad + kj;
            out[ow] = (iw >= 0 && iw < g.win) ? src[iw] : T(0);
          }
        }
      }
    }
  }
}

// Scatter-adds columns back onto an image. Inverse access pattern of im2col.
template <typename T>
void col2im_add(const T* cols, const ConvGeom& g, T* img) {
  for (int c = 0; c < g.cin; ++c) {
    T* plane = img + static_cast<int64_t>(c) * g.hin * g.win;
    for (int ki = 0; ki < g.kh; ++ki) {
      for (int kj = 0; kj < g.kw; ++kj) {
        const T* row = cols + ((static_cast<int64_t>(c) * g.kh + ki) * g.kw + kj) * g.col_cols();
        for (int oh = 0; oh < g.hout; ++oh) {
          int ih = oh * g.stride - g.pad + ki;
          if (ih < 0 || ih >= g.hin) continue;
          T* dst = plane + static_cast<int64_t>(ih) * g.win;
          const T* src = row + static_cast<int64_t>(oh) * g.wout;
          for (int ow = 0; ow < g.wout; ++ow) {
            int iw = ow * g.stride - g.pad + kj;
            if (iw >= 0 && iw < g.win) dst[iw] += src[ow];
          }
        }
      }
    }
  }
}

// C = A(m,k) * B(k,n), all row-major contiguous.
template <typename T>
void gemm(const T* a, const T* b, T* c, int64_t m, int64_t k, int64_t n, bool accumulate = false) {
  ECMap<T> ma(a, m, k);
  ECMap<T> mb(b, k, n);
  EMap<T> mc(c, m, n);
  if (accumulate)
    mc.noalias() += ma * mb;
  else
    mc.noalias() = ma * mb;
}

// C = A^T(m,k) * B(k,n) where A is stored as (k,m).
template <typename T>
void gemm_at(const T* a, const T* b, T* c, int64_t m, int64_t k, int64_t n, bool accumulate = false) {
  ECMap<T> ma(a, k, m);
  ECMap<T> mb(b, k, n);
  EMap<T> mc(c, m, n);
  if (accumulate)
    mc.noalias() += ma.transpose() * mb;
  else
    mc.noalias() = ma.transpose() * mb;
}

// C = A(m,k) * B^T(k,n) where B is stored as (n,k).
template <typename T>
void gemm_bt(const T* a, const T* b, T* c, int64_t m, int64_t k, int64_t n, bool accumulate = false) {
  ECMap<T> ma(a, m, k);
  ECMap<T> mb(b, n, k);
  EMap<T> mc(c, m, n);
  if (accumulate)
    mc.noalias() += ma * mb.transpose();
  else
    mc.noalias() = ma * mb.transpose();
}

}  // namespace sslchange::detail
