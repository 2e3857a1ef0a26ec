#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "taf/tensor.hpp"

namespace taf {

// Handle to a tape node. The tensor is the node's forward output.
template <typename T>
struct Val {
  int id = -1;
  Tensor<T> t;
};

namespace detail {

// Output extent of a strided/dilated cross-correlation along one axis.
inline int conv_out_dim(int in, int k, int stride, int padding, int dilation) {
  int span = dilation * (k - 1) + 1;
  int out = (in + 2 * padding - span) / stride + 1;
  if (out <= 0)
    throw ShapeError("conv2d: kernel span " + std::to_string(span) +
                     " exceeds padded input extent " + std::to_string(in + 2 * padding));
  return out;
}

}  // namespace detail

// Reverse-mode tape over a fixed operation catalog. One logical thread owns a
// tape for the duration of a forward/backward pass; node outputs are immutable
// once recorded. Backward walks nodes in reverse creation order (creation
// order is execution order, hence topological) and visits each node once, so
// two backward passes over identical tapes produce bit-identical gradients.
template <typename T>
class Tape {
 public:
  Val<T> leaf(const Tensor<T>& t, bool requires_grad = false) {
    return record("leaf", t, requires_grad, nullptr);
  }

  // --- convolution ------------------------------------------------------

  Val<T> conv2d(const Val<T>& in, const Val<T>& w, const Val<T>& b, int stride,
                int padding, int dilation = 1) {
    check_rank(in.t, 4, "conv2d input");
    check_rank(w.t, 4, "conv2d weight");
    check_rank(b.t, 1, "conv2d bias");
    const auto& is = in.t.shape();
    const auto& ws = w.t.shape();
    if (ws[2] % 2 == 0 || ws[3] % 2 == 0)
      throw ShapeError("conv2d: kernel dims must be odd, got " + shape_str(ws));
    if (is[1] != ws[1])
      throw ShapeError("conv2d: input channels (" + std::to_string(is[1]) +
                       ") != weight input channels (" + std::to_string(ws[1]) + ")");
    if (b.t.dim(0) != ws[0])
      throw ShapeError("conv2d: bias size (" + std::to_string(b.t.dim(0)) +
                       ") != output channels (" + std::to_string(ws[0]) + ")");
    if (stride < 1 || dilation < 1 || padding < 0)
      throw ShapeError("conv2d: invalid stride/padding/dilation");

    Tensor<T> out = conv2d_forward(in.t, w.t, b.t, stride, padding, dilation);
    bool req = requires(in) || requires(w) || requires(b);
    Tensor<T> in_t = in.t, w_t = w.t;
    int iid = in.id, wid = w.id, bid = b.id;
    return record("conv2d", out, req, [=](Tape& tp, const Tensor<T>& g) {
      conv2d_backward(tp, g, in_t, w_t, iid, wid, bid, stride, padding, dilation);
    });
  }

  // --- elementwise ------------------------------------------------------

  Val<T> relu(const Val<T>& x) {
    Tensor<T> out(x.t.shape());
    const T* xd = x.t.data();
    T* od = out.data();
    for (int64_t i = 0; i < out.numel(); ++i) od[i] = xd[i] > T(0) ? xd[i] : T(0);
    Tensor<T> x_t = x.t;
    int xid = x.id;
    return record("relu", out, requires(x), [=](Tape& tp, const Tensor<T>& g) {
      Tensor<T> gx(x_t.shape());
      const T* xd2 = x_t.data();
      const T* gd = g.data();
      T* gxd = gx.data();
      // subgradient at 0 is 0
      for (int64_t i = 0; i < gx.numel(); ++i) gxd[i] = xd2[i] > T(0) ? gd[i] : T(0);
      tp.accum(xid, gx);
    });
  }

  Val<T> add(const Val<T>& a, const Val<T>& b) {
    if (!a.t.same_shape(b.t))
      throw ShapeError("add: shape mismatch " + shape_str(a.t.shape()) + " vs " +
                       shape_str(b.t.shape()));
    Tensor<T> out(a.t.shape());
    const T* ad = a.t.data();
    const T* bd = b.t.data();
    T* od = out.data();
    for (int64_t i = 0; i < out.numel(); ++i) od[i] = ad[i] + bd[i];
    int aid = a.id, bid = b.id;
    return record("add", out, requires(a) || requires(b),
                  [=](Tape& tp, const Tensor<T>& g) {
                    tp.accum(aid, g);
                    tp.accum(bid, g);
                  });
  }

  Val<T> scale(const Val<T>& x, T alpha) {
    Tensor<T> out(x.t.shape());
    const T* xd = x.t.data();
    T* od = out.data();
    for (int64_t i = 0; i < out.numel(); ++i) od[i] = alpha * xd[i];
    int xid = x.id;
    return record("scale", out, requires(x), [=](Tape& tp, const Tensor<T>& g) {
      Tensor<T> gx(g.shape());
      const T* gd = g.data();
      T* gxd = gx.data();
      for (int64_t i = 0; i < gx.numel(); ++i) gxd[i] = alpha * gd[i];
      tp.accum(xid, gx);
    });
  }

  Val<T> add_scalar(const Val<T>& x, T c) {
    Tensor<T> out(x.t.shape());
    const T* xd = x.t.data();
    T* od = out.data();
    for (int64_t i = 0; i < out.numel(); ++i) od[i] = xd[i] + c;
    int xid = x.id;
    return record("add_scalar", out, requires(x),
                  [=](Tape& tp, const Tensor<T>& g) { tp.accum(xid, g); });
  }

  // --- resampling -------------------------------------------------------

  Val<T> downsample_avg(const Val<T>& x, int k) {
    check_rank(x.t, 4, "downsample_avg input");
    const auto& s = x.t.shape();
    if (k < 1 || s[2] % k != 0 || s[3] % k != 0)
      throw ShapeError("downsample_avg: spatial dims " + std::to_string(s[2]) + "x" +
                       std::to_string(s[3]) + " not divisible by " + std::to_string(k));
    int N = s[0], C = s[1], H = s[2] / k, W = s[3] / k;
    Tensor<T> out({N, C, H, W});
    T inv = T(1) / T(k * k);
    for (int n = 0; n < N; ++n)
      for (int c = 0; c < C; ++c)
        for (int h = 0; h < H; ++h)
          for (int w = 0; w < W; ++w) {
            T acc = 0;
            for (int dh = 0; dh < k; ++dh)
              for (int dw = 0; dw < k; ++dw)
                acc += x.t[x.t.idx4(n, c, h * k + dh, w * k + dw)];
            out[out.idx4(n, c, h, w)] = acc * inv;
          }
    int xid = x.id;
    std::vector<int> in_shape = s;
    return record("downsample_avg", out, requires(x),
                  [=](Tape& tp, const Tensor<T>& g) {
                    Tensor<T> gx(in_shape);
                    for (int n = 0; n < N; ++n)
                      for (int c = 0; c < C; ++c)
                        for (int h = 0; h < H; ++h)
                          for (int w = 0; w < W; ++w) {
                            T gv = g[g.idx4(n, c, h, w)] * inv;
                            for (int dh = 0; dh < k; ++dh)
                              for (int dw = 0; dw < k; ++dw)
                                gx[gx.idx4(n, c, h * k + dh, w * k + dw)] = gv;
                          }
                    tp.accum(xid, gx);
                  });
  }

  Val<T> upsample_nearest(const Val<T>& x, int k) {
    check_rank(x.t, 4, "upsample_nearest input");
    if (k < 1) throw ShapeError("upsample_nearest: factor must be >= 1");
    const auto& s = x.t.shape();
    int N = s[0], C = s[1], H = s[2], W = s[3];
    Tensor<T> out({N, C, H * k, W * k});
    for (int n = 0; n < N; ++n)
      for (int c = 0; c < C; ++c)
        for (int h = 0; h < H * k; ++h)
          for (int w = 0; w < W * k; ++w)
            out[out.idx4(n, c, h, w)] = x.t[x.t.idx4(n, c, h / k, w / k)];
    int xid = x.id;
    std::vector<int> in_shape = s;
    return record("upsample_nearest", out, requires(x),
                  [=](Tape& tp, const Tensor<T>& g) {
                    Tensor<T> gx(in_shape);
                    for (int n = 0; n < N; ++n)
                      for (int c = 0; c < C; ++c)
                        for (int h = 0; h < H * k; ++h)
                          for (int w = 0; w < W * k; ++w)
                            gx[gx.idx4(n, c, h / k, w / k)] += g[g.idx4(n, c, h, w)];
                    tp.accum(xid, gx);
                  });
  }

  Val<T> global_avg_pool(const Val<T>& x) {
    check_rank(x.t, 4, "global_avg_pool input");
    const auto& s = x.t.shape();
    int N = s[0], C = s[1], H = s[2], W = s[3];
    Tensor<T> out({N, C, 1, 1});
    T inv = T(1) / T(int64_t(H) * W);
    for (int n = 0; n < N; ++n)
      for (int c = 0; c < C; ++c) {
        T acc = 0;
        const T* row = x.t.data() + x.t.idx4(n, c, 0, 0);
        for (int64_t i = 0; i < int64_t(H) * W; ++i) acc += row[i];
        out[out.idx4(n, c, 0, 0)] = acc * inv;
      }
    int xid = x.id;
    std::vector<int> in_shape = s;
    return record("global_avg_pool", out, requires(x),
                  [=](Tape& tp, const Tensor<T>& g) {
                    Tensor<T> gx(in_shape);
                    for (int n = 0; n < N; ++n)
                      for (int c = 0; c < C; ++c) {
                        T gv = g[g.idx4(n, c, 0, 0)] * inv;
                        T* row = gx.data() + gx.idx4(n, c, 0, 0);
                        for (int64_t i = 0; i < int64_t(H) * W; ++i) row[i] = gv;
                      }
                    tp.accum(xid, gx);
                  });
  }

  // --- normalization and losses ------------------------------------------

  // Per-pixel softmax over the channel axis, stabilized by max subtraction.
  Val<T> softmax_channel(const Val<T>& x) {
    check_rank(x.t, 4, "softmax_channel input");
    const auto& s = x.t.shape();
    if (s[1] < 2) throw ShapeError("softmax_channel: needs >= 2 channels");
    int N = s[0], K = s[1], H = s[2], W = s[3];
    Tensor<T> out(s);
    int64_t plane = int64_t(H) * W;
    for (int n = 0; n < N; ++n)
      for (int64_t p = 0; p < plane; ++p) {
        int64_t base = int64_t(n) * K * plane + p;
        T m = x.t[base];
        for (int k = 1; k < K; ++k) m = std::max(m, x.t[base + k * plane]);
        T sum = 0;
        for (int k = 0; k < K; ++k) {
          T e = std::exp(x.t[base + k * plane] - m);
          out[base + k * plane] = e;
          sum += e;
        }
        T inv = T(1) / sum;
        for (int k = 0; k < K; ++k) out[base + k * plane] *= inv;
      }
    int xid = x.id;
    Tensor<T> y = out;
    return record("softmax_channel", out, requires(x),
                  [=](Tape& tp, const Tensor<T>& g) {
                    Tensor<T> gx(y.shape());
                    for (int n = 0; n < N; ++n)
                      for (int64_t p = 0; p < plane; ++p) {
                        int64_t base = int64_t(n) * K * plane + p;
                        T dot = 0;
                        for (int k = 0; k < K; ++k)
                          dot += g[base + k * plane] * y[base + k * plane];
                        for (int k = 0; k < K; ++k)
                          gx[base + k * plane] =
                              y[base + k * plane] * (g[base + k * plane] - dot);
                      }
                    tp.accum(xid, gx);
                  });
  }

  // Mean over non-ignored pixels of -log softmax(logits)[label].
  // All pixels ignored yields 0 and sets *all_ignored when provided.
  Val<T> cross_entropy_masked(const Val<T>& logits, const LabelMap& labels,
                              int ignore_index = kIgnoreLabel,
                              bool* all_ignored = nullptr) {
    check_rank(logits.t, 4, "cross_entropy logits");
    const auto& s = logits.t.shape();
    int N = s[0], K = s[1], H = s[2], W = s[3];
    if (labels.numel() != int64_t(N) * H * W)
      throw ShapeError("cross_entropy: labels " + shape_str(labels.shape()) +
                       " do not match logits " + shape_str(s));
    int64_t plane = int64_t(H) * W;
    T loss = 0;
    int64_t count = 0;
    for (int n = 0; n < N; ++n)
      for (int64_t p = 0; p < plane; ++p) {
        int lab = labels[int64_t(n) * plane + p];
        if (lab == ignore_index) continue;
        if (lab < 0 || lab >= K)
          throw DataError("cross_entropy: label " + std::to_string(lab) +
                          " outside [0," + std::to_string(K) + ")");
        int64_t base = int64_t(n) * K * plane + p;
        T m = logits.t[base];
        for (int k = 1; k < K; ++k) m = std::max(m, logits.t[base + k * plane]);
        T sum = 0;
        for (int k = 0; k < K; ++k) sum += std::exp(logits.t[base + k * plane] - m);
        loss += m + std::log(sum) - logits.t[base + lab * plane];
        ++count;
      }
    if (all_ignored) *all_ignored = (count == 0);
    Tensor<T> out = Tensor<T>::scalar(count ? loss / T(count) : T(0));
    if (count == 0) return record("cross_entropy_masked", out, false, nullptr);
    Tensor<T> lg = logits.t;
    LabelMap lab = labels;
    int lid = logits.id;
    int64_t cnt = count;
    return record("cross_entropy_masked", out, requires(logits),
                  [=](Tape& tp, const Tensor<T>& g) {
                    T gs = g[0] / T(cnt);
                    Tensor<T> gx(lg.shape());
                    for (int n = 0; n < N; ++n)
                      for (int64_t p = 0; p < plane; ++p) {
                        int la = lab[int64_t(n) * plane + p];
                        if (la == ignore_index) continue;
                        int64_t base = int64_t(n) * K * plane + p;
                        T m = lg[base];
                        for (int k = 1; k < K; ++k) m = std::max(m, lg[base + k * plane]);
                        T sum = 0;
                        for (int k = 0; k < K; ++k)
                          sum += std::exp(lg[base + k * plane] - m);
                        T inv = T(1) / sum;
                        for (int k = 0; k < K; ++k) {
                          T soft = std::exp(lg[base + k * plane] - m) * inv;
                          gx[base + k * plane] = (soft - T(k == la)) * gs;
                        }
                      }
                    tp.accum(lid, gx);
                  });
  }

  // Mean over all elements of |a - b|. sign(0) taken as 0.
  Val<T> l1_mean(const Val<T>& a, const Val<T>& b) {
    if (!a.t.same_shape(b.t))
      throw ShapeError("l1_mean: shape mismatch " + shape_str(a.t.shape()) + " vs " +
                       shape_str(b.t.shape()));
    int64_t n = a.t.numel();
    T acc = 0;
    const T* ad = a.t.data();
    const T* bd = b.t.data();
    for (int64_t i = 0; i < n; ++i) acc += std::abs(ad[i] - bd[i]);
    Tensor<T> out = Tensor<T>::scalar(acc / T(n));
    Tensor<T> a_t = a.t, b_t = b.t;
    int aid = a.id, bid = b.id;
    return record("l1_mean", out, requires(a) || requires(b),
                  [=](Tape& tp, const Tensor<T>& g) {
                    T gs = g[0] / T(n);
                    Tensor<T> ga(a_t.shape());
                    const T* ad2 = a_t.data();
                    const T* bd2 = b_t.data();
                    T* gd = ga.data();
                    for (int64_t i = 0; i < n; ++i) {
                      T d = ad2[i] - bd2[i];
                      gd[i] = d > T(0) ? gs : (d < T(0) ? -gs : T(0));
                    }
                    tp.accum(aid, ga);
                    Tensor<T> gb(b_t.shape());
                    T* gbd = gb.data();
                    for (int64_t i = 0; i < n; ++i) gbd[i] = -gd[i];
                    tp.accum(bid, gb);
                  });
  }

  Val<T> reduce_sum(const Val<T>& x) {
    T acc = 0;
    const T* xd = x.t.data();
    for (int64_t i = 0; i < x.t.numel(); ++i) acc += xd[i];
    Tensor<T> out = Tensor<T>::scalar(acc);
    int xid = x.id;
    std::vector<int> in_shape = x.t.shape();
    return record("reduce_sum", out, requires(x),
                  [=](Tape& tp, const Tensor<T>& g) {
                    tp.accum(xid, Tensor<T>::full(in_shape, g[0]));
                  });
  }

  // --- backward ----------------------------------------------------------

  void backward(const Val<T>& root) {
    if (root.id < 0 || root.id >= int(nodes_.size()))
      throw Error(ErrorKind::internal, "backward: root not on this tape");
    if (root.t.numel() != 1)
      throw ShapeError("backward: root must be scalar, got " +
                       shape_str(root.t.shape()));
    grads_.assign(nodes_.size(), Tensor<T>{});
    grads_[size_t(root.id)] = Tensor<T>::full(root.t.shape(), T(1));
    for (int i = root.id; i >= 0; --i) {
      Node& nd = nodes_[size_t(i)];
      if (!grads_[size_t(i)].defined() || !nd.requires_grad || !nd.back) continue;
      nd.back(*this, grads_[size_t(i)]);
    }
  }

  Tensor<T> grad(const Val<T>& v) const {
    if (v.id >= 0 && v.id < int(grads_.size()) && grads_[size_t(v.id)].defined())
      return grads_[size_t(v.id)];
    return Tensor<T>::zeros(v.t.shape());
  }

  bool has_grad(const Val<T>& v) const {
    return v.id >= 0 && v.id < int(grads_.size()) && grads_[size_t(v.id)].defined();
  }

  std::vector<std::string> op_trace() const {
    std::vector<std::string> tr;
    tr.reserve(nodes_.size());
    for (const auto& n : nodes_) tr.push_back(n.op);
    return tr;
  }

  size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    std::string op;
    Tensor<T> out;
    bool requires_grad = false;
    std::function<void(Tape&, const Tensor<T>&)> back;
  };

  std::vector<Node> nodes_;
  std::vector<Tensor<T>> grads_;

  bool requires(const Val<T>& v) const {
    return v.id >= 0 && nodes_[size_t(v.id)].requires_grad;
  }

  Val<T> record(const char* op, Tensor<T> out, bool requires_grad,
                std::function<void(Tape&, const Tensor<T>&)> back) {
    nodes_.push_back(Node{op, out, requires_grad, std::move(back)});
    return Val<T>{int(nodes_.size()) - 1, nodes_.back().out};
  }

  void accum(int id, const Tensor<T>& g) {
    if (id < 0 || !nodes_[size_t(id)].requires_grad) return;
    Tensor<T>& slot = grads_[size_t(id)];
    if (!slot.defined()) {
      slot = g.clone();
      return;
    }
    T* sd = slot.data();
    const T* gd = g.data();
    for (int64_t i = 0; i < slot.numel(); ++i) sd[i] += gd[i];
  }

  static void check_rank(const Tensor<T>& t, int rank, const char* what) {
    if (t.rank() != rank)
      throw ShapeError(std::string(what) + ": expected rank " + std::to_string(rank) +
                       ", got " + shape_str(t.shape()));
  }

  static Tensor<T> conv2d_forward(const Tensor<T>& in, const Tensor<T>& w,
                                  const Tensor<T>& b, int stride, int padding,
                                  int dilation) {
    const auto& is = in.shape();
    const auto& ws = w.shape();
    int N = is[0], C = is[1], H = is[2], W = is[3];
    int K = ws[0], KH = ws[2], KW = ws[3];
    int OH = detail::conv_out_dim(H, KH, stride, padding, dilation);
    int OW = detail::conv_out_dim(W, KW, stride, padding, dilation);
    Tensor<T> out({N, K, OH, OW});
    for (int n = 0; n < N; ++n)
      for (int k = 0; k < K; ++k) {
        T* oplane = out.data() + out.idx4(n, k, 0, 0);
        T bias = b[k];
        for (int64_t i = 0; i < int64_t(OH) * OW; ++i) oplane[i] = bias;
        for (int c = 0; c < C; ++c)
          for (int kh = 0; kh < KH; ++kh)
            for (int kw = 0; kw < KW; ++kw) {
              T wv = w[w.idx4(k, c, kh, kw)];
              int woff = kw * dilation - padding;
              int ow_lo, ow_hi;
              col_range(woff, stride, W, OW, &ow_lo, &ow_hi);
              if (ow_lo > ow_hi) continue;
              for (int oh = 0; oh < OH; ++oh) {
                int ih = oh * stride - padding + kh * dilation;
                if (ih < 0 || ih >= H) continue;
                const T* irow = in.data() + in.idx4(n, c, ih, 0);
                T* orow = oplane + int64_t(oh) * OW;
                if (stride == 1) {
                  const T* ip = irow + woff + ow_lo;
                  for (int ow = ow_lo; ow <= ow_hi; ++ow)
                    orow[ow] += wv * ip[ow - ow_lo];
                } else {
                  for (int ow = ow_lo; ow <= ow_hi; ++ow)
                    orow[ow] += wv * irow[ow * stride + woff];
                }
              }
            }
      }
    return out;
  }

  void conv2d_backward(Tape& tp, const Tensor<T>& g, const Tensor<T>& in,
                       const Tensor<T>& w, int iid, int wid, int bid, int stride,
                       int padding, int dilation) {
    const auto& is = in.shape();
    const auto& ws = w.shape();
    const auto& gs = g.shape();
    int N = is[0], C = is[1], H = is[2], W = is[3];
    int K = ws[0], KH = ws[2], KW = ws[3];
    int OH = gs[2], OW = gs[3];

    if (bid >= 0 && nodes_[size_t(bid)].requires_grad) {
      Tensor<T> gb({K});
      for (int n = 0; n < N; ++n)
        for (int k = 0; k < K; ++k) {
          const T* gp = g.data() + g.idx4(n, k, 0, 0);
          T acc = 0;
          for (int64_t i = 0; i < int64_t(OH) * OW; ++i) acc += gp[i];
          gb[k] += acc;
        }
      tp.accum(bid, gb);
    }

    if (wid >= 0 && nodes_[size_t(wid)].requires_grad) {
      Tensor<T> gw(ws);
      for (int k = 0; k < K; ++k)
        for (int c = 0; c < C; ++c)
          for (int kh = 0; kh < KH; ++kh)
            for (int kw = 0; kw < KW; ++kw) {
              int woff = kw * dilation - padding;
              int ow_lo, ow_hi;
              col_range(woff, stride, W, OW, &ow_lo, &ow_hi);
              if (ow_lo > ow_hi) continue;
              T acc = 0;
              for (int n = 0; n < N; ++n)
                for (int oh = 0; oh < OH; ++oh) {
                  int ih = oh * stride - padding + kh * dilation;
                  if (ih < 0 || ih >= H) continue;
                  const T* irow = in.data() + in.idx4(n, c, ih, 0);
                  const T* grow = g.data() + g.idx4(n, k, oh, 0);
                  if (stride == 1) {
                    const T* ip = irow + woff + ow_lo;
                    for (int ow = ow_lo; ow <= ow_hi; ++ow)
                      acc += grow[ow] * ip[ow - ow_lo];
                  } else {
                    for (int ow = ow_lo; ow <= ow_hi; ++ow)
                      acc += grow[ow] * irow[ow * stride + woff];
                  }
                }
              gw[gw.idx4(k, c, kh, kw)] = acc;
            }
      tp.accum(wid, gw);
    }

    if (iid >= 0 && nodes_[size_t(iid)].requires_grad) {
      Tensor<T> gi(is);
      for (int n = 0; n < N; ++n)
        for (int k = 0; k < K; ++k)
          for (int c = 0; c < C; ++c)
            for (int kh = 0; kh < KH; ++kh)
              for (int kw = 0; kw < KW; ++kw) {
                T wv = w[w.idx4(k, c, kh, kw)];
                int woff = kw * dilation - padding;
                int ow_lo, ow_hi;
                col_range(woff, stride, W, OW, &ow_lo, &ow_hi);
                if (ow_lo > ow_hi) continue;
                for (int oh = 0; oh < OH; ++oh) {
                  int ih = oh * stride - padding + kh * dilation;
                  if (ih < 0 || ih >= H) continue;
                  T* girow = gi.data() + gi.idx4(n, c, ih, 0);
                  const T* grow = g.data() + g.idx4(n, k, oh, 0);
                  if (stride == 1) {
                    T* gp = girow + woff + ow_lo;
                    for (int ow = ow_lo; ow <= ow_hi; ++ow)
                      gp[ow - ow_lo] += wv * grow[ow];
                  } else {
                    for (int ow = ow_lo; ow <= ow_hi; ++ow)
                      girow[ow * stride + woff] += wv * grow[ow];
                  }
                }
              }
      tp.accum(iid, gi);
    }
  }

  // Valid output-column range for one kernel column: 0 <= ow*stride+off < W.
  static void col_range(int off, int stride, int W, int OW, int* lo, int* hi) {
    int l = 0;
    if (off < 0) l = (-off + stride - 1) / stride;
    int h = (W - 1 - off) / stride;
    if (h > OW - 1) h = OW - 1;
    *lo = l;
    *hi = h;
  }
};

}  // namespace taf
