#include "dttd/num/ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "dttd/common/error.hpp"

namespace dttd::num {

namespace kernels {

void matmul_nn(const double* a, const double* b, double* c, int n, int k, int m) {
  std::memset(c, 0, sizeof(double) * static_cast<size_t>(n) * m);
  for (int i = 0; i < n; ++i) {
    const double* arow = a + static_cast<size_t>(i) * k;
    double* crow = c + static_cast<size_t>(i) * m;
    for (int p = 0; p < k; ++p) {
      const double aip = arow[p];
      const double* brow = b + static_cast<size_t>(p) * m;
      for (int j = 0; j < m; ++j) crow[j] += aip * brow[j];
    }
  }
}

void matmul_nt(const double* a, const double* b, double* c, int n, int m, int k) {
  for (int i = 0; i < n; ++i) {
    const double* arow = a + static_cast<size_t>(i) * m;
    double* crow = c + static_cast<size_t>(i) * k;
    for (int j = 0; j < k; ++j) {
      const double* brow = b + static_cast<size_t>(j) * m;
      double acc = 0.0;
      for (int p = 0; p < m; ++p) acc += arow[p] * brow[p];
      crow[j] = acc;
    }
  }
}

void matmul_tn(const double* a, const double* g, double* c, int n, int k, int m) {
  std::memset(c, 0, sizeof(double) * static_cast<size_t>(k) * m);
  for (int i = 0; i < n; ++i) {
    const double* arow = a + static_cast<size_t>(i) * k;
    const double* grow = g + static_cast<size_t>(i) * m;
    for (int p = 0; p < k; ++p) {
      const double aip = arow[p];
      double* crow = c + static_cast<size_t>(p) * m;
      for (int j = 0; j < m; ++j) crow[j] += aip * grow[j];
    }
  }
}

}  // namespace kernels

namespace {

Graph* common_graph(std::initializer_list<const Tensor*> ts) {
  Graph* g = nullptr;
  for (const Tensor* t : ts) {
    if (!t->graph()) continue;
    if (g && g != t->graph()) throw ValidationError("operation mixes tensors from two graphs");
    g = t->graph();
  }
  return g;
}

Tensor finish(const char* tag, std::initializer_list<const Tensor*> ins, Tensor out, Graph::Vjp vjp) {
  Graph* g = common_graph(ins);
  if (!g) return out;
  std::vector<int> nodes;
  nodes.reserve(ins.size());
  for (const Tensor* t : ins) nodes.push_back(t->graph() ? t->node() : -1);
  return g->record(tag, std::move(nodes), std::move(out), std::move(vjp));
}

void require_rank2(const Tensor& t, const char* tag) {
  if (t.shape().size() > 2 || t.shape().empty()) {
    throw ValidationError(std::string(tag) + ": expected rank 1 or 2, got shape " + t.shape_str());
  }
}

int last_dim(const Tensor& t) {
  return t.shape().back();
}

enum class Bcast { kSame, kScalarRight, kScalarLeft, kRow, kCol };

Bcast bcast_kind(const Tensor& a, const Tensor& b, const char* tag) {
  if (a.same_shape(b)) return Bcast::kSame;
  if (b.size() == 1) return Bcast::kScalarRight;
  if (a.size() == 1) return Bcast::kScalarLeft;
  require_rank2(a, tag);
  require_rank2(b, tag);
  if (a.shape().size() == 2) {
    const int n = a.rows(), m = a.cols();
    if (static_cast<int>(b.size()) == m && b.rows() == 1) return Bcast::kRow;
    if (b.shape().size() == 2 && b.shape()[0] == n && b.shape()[1] == 1) return Bcast::kCol;
  }
  throw ValidationError(std::string(tag) + ": shapes " + a.shape_str() + " and " + b.shape_str() +
                        " do not broadcast");
}

template <typename F>
Tensor binary_forward(const Tensor& a, const Tensor& b, Bcast k, F f) {
  auto av = a.values();
  auto bv = b.values();
  if (k == Bcast::kScalarLeft) {
    std::vector<double> out(bv.size());
    const double s = av[0];
    for (size_t i = 0; i < bv.size(); ++i) out[i] = f(s, bv[i]);
    return Tensor::from(b.shape(), std::move(out));
  }
  std::vector<double> out(av.size());
  switch (k) {
    case Bcast::kSame:
      for (size_t i = 0; i < av.size(); ++i) out[i] = f(av[i], bv[i]);
      break;
    case Bcast::kScalarRight: {
      const double s = bv[0];
      for (size_t i = 0; i < av.size(); ++i) out[i] = f(av[i], s);
      break;
    }
    case Bcast::kRow: {
      const int n = a.rows(), m = a.cols();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) out[static_cast<size_t>(i) * m + j] = f(av[static_cast<size_t>(i) * m + j], bv[j]);
      break;
    }
    case Bcast::kCol: {
      const int n = a.rows(), m = a.cols();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) out[static_cast<size_t>(i) * m + j] = f(av[static_cast<size_t>(i) * m + j], bv[i]);
      break;
    }
    default:
      break;
  }
  return Tensor::from(a.shape(), std::move(out));
}

// Sums a full-size gradient down to the shape of the broadcast operand.
Tensor reduce_for(const Tensor& full_grad, const Tensor& operand, Bcast k, bool operand_is_rhs) {
  auto gv = full_grad.values();
  if (k == Bcast::kSame || (k == Bcast::kScalarLeft && !operand_is_rhs && full_grad.same_shape(operand))) {
    return full_grad;
  }
  if ((k == Bcast::kScalarRight && operand_is_rhs) || (k == Bcast::kScalarLeft && !operand_is_rhs)) {
    double s = 0.0;
    for (double v : gv) s += v;
    return Tensor::from(operand.shape(), {s});
  }
  if (k == Bcast::kRow && operand_is_rhs) {
    const int m = static_cast<int>(operand.size());
    const int n = static_cast<int>(gv.size()) / m;
    std::vector<double> out(m, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) out[j] += gv[static_cast<size_t>(i) * m + j];
    return Tensor::from(operand.shape(), std::move(out));
  }
  if (k == Bcast::kCol && operand_is_rhs) {
    const int n = static_cast<int>(operand.size());
    const int m = static_cast<int>(gv.size()) / n;
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) out[i] += gv[static_cast<size_t>(i) * m + j];
    return Tensor::from(operand.shape(), std::move(out));
  }
  return full_grad;
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.shape().size() != 2 || b.shape().size() != 2) {
    throw ValidationError("matmul: expects rank-2 tensors, got " + a.shape_str() + " and " + b.shape_str());
  }
  const int n = a.shape()[0], k = a.shape()[1];
  const int k2 = b.shape()[0], m = b.shape()[1];
  if (k != k2) {
    throw ValidationError("matmul: inner extents disagree: " + a.shape_str() + " vs " + b.shape_str());
  }
  std::vector<double> out(static_cast<size_t>(n) * m);
  kernels::matmul_nn(a.values().data(), b.values().data(), out.data(), n, k, m);
  Tensor res = Tensor::from({n, m}, std::move(out));
  return finish("matmul", {&a, &b}, std::move(res), [a, b, n, k, m](const Tensor& g) {
    std::vector<double> da(static_cast<size_t>(n) * k), db(static_cast<size_t>(k) * m);
    kernels::matmul_nt(g.values().data(), b.values().data(), da.data(), n, m, k);
    kernels::matmul_tn(a.values().data(), g.values().data(), db.data(), n, k, m);
    return std::vector<Tensor>{Tensor::from({n, k}, std::move(da)), Tensor::from({k, m}, std::move(db))};
  });
}

Tensor add(const Tensor& a, const Tensor& b) {
  Bcast k = bcast_kind(a, b, "add");
  Tensor out = binary_forward(a, b, k, [](double x, double y) { return x + y; });
  return finish("add", {&a, &b}, std::move(out), [a, b, k](const Tensor& g) {
    Tensor da = (k == Bcast::kScalarLeft) ? reduce_for(g, a, Bcast::kScalarRight, true) : g;
    Tensor db = reduce_for(g, b, k, true);
    return std::vector<Tensor>{std::move(da), std::move(db)};
  });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  Bcast k = bcast_kind(a, b, "sub");
  Tensor out = binary_forward(a, b, k, [](double x, double y) { return x - y; });
  return finish("sub", {&a, &b}, std::move(out), [a, b, k](const Tensor& g) {
    Tensor da = (k == Bcast::kScalarLeft) ? reduce_for(g, a, Bcast::kScalarRight, true) : g;
    std::vector<double> neg(g.values().begin(), g.values().end());
    for (double& v : neg) v = -v;
    Tensor db = reduce_for(Tensor::from(g.shape(), std::move(neg)), b, k, true);
    return std::vector<Tensor>{std::move(da), std::move(db)};
  });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  Bcast k = bcast_kind(a, b, "mul");
  Tensor out = binary_forward(a, b, k, [](double x, double y) { return x * y; });
  return finish("mul", {&a, &b}, std::move(out), [a, b, k](const Tensor& g) {
    Tensor ga = binary_forward(g, b, k == Bcast::kScalarLeft ? Bcast::kSame : k,
                               [](double x, double y) { return x * y; });
    Tensor da = (k == Bcast::kScalarLeft) ? reduce_for(ga, a, Bcast::kScalarRight, true) : ga;
    Tensor gb_full = (k == Bcast::kScalarLeft)
                         ? binary_forward(g, a, Bcast::kScalarRight, [](double x, double y) { return x * y; })
                         : binary_forward(g, a, Bcast::kSame, [](double x, double y) { return x * y; });
    Tensor db = reduce_for(gb_full, b, k, true);
    return std::vector<Tensor>{std::move(da), std::move(db)};
  });
}

Tensor div(const Tensor& a, const Tensor& b) {
  for (double v : b.values()) {
    if (v == 0.0) throw ValidationError("div: zero divisor");
  }
  Bcast k = bcast_kind(a, b, "div");
  Tensor out = binary_forward(a, b, k, [](double x, double y) { return x / y; });
  return finish("div", {&a, &b}, out, [a, b, k, out](const Tensor& g) {
    Tensor ga = binary_forward(g, b, k == Bcast::kScalarLeft ? Bcast::kSame : k,
                               [](double x, double y) { return x / y; });
    Tensor da = (k == Bcast::kScalarLeft) ? reduce_for(ga, a, Bcast::kScalarRight, true) : ga;
    // d/db (a/b) = -out/b, with out already broadcast to full shape.
    Tensor tmp = binary_forward(g, out, Bcast::kSame, [](double x, double y) { return -x * y; });
    Tensor gb_full = binary_forward(tmp, b, k == Bcast::kScalarLeft ? Bcast::kSame : k,
                                    [](double x, double y) { return x / y; });
    Tensor db = reduce_for(gb_full, b, k, true);
    return std::vector<Tensor>{std::move(da), std::move(db)};
  });
}

Tensor relu(const Tensor& x) {
  std::vector<double> out(x.size());
  auto xv = x.values();
  for (size_t i = 0; i < out.size(); ++i) out[i] = xv[i] > 0.0 ? xv[i] : 0.0;
  Tensor res = Tensor::from(x.shape(), std::move(out));
  return finish("relu", {&x}, std::move(res), [x](const Tensor& g) {
    std::vector<double> dx(g.size());
    auto xv = x.values();
    auto gv = g.values();
    for (size_t i = 0; i < dx.size(); ++i) dx[i] = xv[i] > 0.0 ? gv[i] : 0.0;
    return std::vector<Tensor>{Tensor::from(x.shape(), std::move(dx))};
  });
}

Tensor softmax(const Tensor& x) {
  const int m = last_dim(x);
  const int n = static_cast<int>(x.size()) / m;
  std::vector<double> out(x.size());
  auto xv = x.values();
  for (int i = 0; i < n; ++i) {
    const double* row = xv.data() + static_cast<size_t>(i) * m;
    double* orow = out.data() + static_cast<size_t>(i) * m;
    double mx = row[0];
    for (int j = 1; j < m; ++j) mx = std::max(mx, row[j]);
    double s = 0.0;
    for (int j = 0; j < m; ++j) {
      orow[j] = std::exp(row[j] - mx);
      s += orow[j];
    }
    for (int j = 0; j < m; ++j) orow[j] /= s;
  }
  Tensor res = Tensor::from(x.shape(), std::move(out));
  return finish("softmax", {&x}, res, [res, n, m](const Tensor& g) {
    std::vector<double> dx(res.size());
    auto yv = res.values();
    auto gv = g.values();
    for (int i = 0; i < n; ++i) {
      const size_t off = static_cast<size_t>(i) * m;
      double dot = 0.0;
      for (int j = 0; j < m; ++j) dot += gv[off + j] * yv[off + j];
      for (int j = 0; j < m; ++j) dx[off + j] = yv[off + j] * (gv[off + j] - dot);
    }
    return std::vector<Tensor>{Tensor::from(res.shape(), std::move(dx))};
  });
}

Tensor layer_norm(const Tensor& x) {
  constexpr double kEps = 1e-5;
  const int m = last_dim(x);
  const int n = static_cast<int>(x.size()) / m;
  std::vector<double> out(x.size());
  std::vector<double> inv_std(n);
  auto xv = x.values();
  for (int i = 0; i < n; ++i) {
    const size_t off = static_cast<size_t>(i) * m;
    double mu = 0.0;
    for (int j = 0; j < m; ++j) mu += xv[off + j];
    mu /= m;
    double var = 0.0;
    for (int j = 0; j < m; ++j) {
      const double d = xv[off + j] - mu;
      var += d * d;
    }
    var /= m;
    const double inv = 1.0 / std::sqrt(var + kEps);
    inv_std[i] = inv;
    for (int j = 0; j < m; ++j) out[off + j] = (xv[off + j] - mu) * inv;
  }
  Tensor res = Tensor::from(x.shape(), std::move(out));
  return finish("layer-norm", {&x}, res, [res, inv_std = std::move(inv_std), n, m](const Tensor& g) {
    std::vector<double> dx(res.size());
    auto yv = res.values();
    auto gv = g.values();
    for (int i = 0; i < n; ++i) {
      const size_t off = static_cast<size_t>(i) * m;
      double gmean = 0.0, gymean = 0.0;
      for (int j = 0; j < m; ++j) {
        gmean += gv[off + j];
        gymean += gv[off + j] * yv[off + j];
      }
      gmean /= m;
      gymean /= m;
      for (int j = 0; j < m; ++j) {
        dx[off + j] = inv_std[i] * (gv[off + j] - gmean - yv[off + j] * gymean);
      }
    }
    return std::vector<Tensor>{Tensor::from(res.shape(), std::move(dx))};
  });
}

Tensor log(const Tensor& x) {
  auto xv = x.values();
  std::vector<double> out(x.size());
  for (size_t i = 0; i < out.size(); ++i) {
    if (xv[i] <= 0.0) {
      throw ValidationError("log: non-positive input " + std::to_string(xv[i]) + " at index " +
                            std::to_string(i));
    }
    out[i] = std::log(xv[i]);
  }
  Tensor res = Tensor::from(x.shape(), std::move(out));
  return finish("log", {&x}, std::move(res), [x](const Tensor& g) {
    auto xv = x.values();
    auto gv = g.values();
    std::vector<double> dx(g.size());
    for (size_t i = 0; i < dx.size(); ++i) dx[i] = gv[i] / xv[i];
    return std::vector<Tensor>{Tensor::from(x.shape(), std::move(dx))};
  });
}

Tensor sigmoid(const Tensor& x) {
  auto xv = x.values();
  std::vector<double> out(x.size());
  for (size_t i = 0; i < out.size(); ++i) {
    const double v = xv[i];
    out[i] = v >= 0.0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
  }
  Tensor res = Tensor::from(x.shape(), std::move(out));
  return finish("sigmoid", {&x}, res, [res](const Tensor& g) {
    auto yv = res.values();
    auto gv = g.values();
    std::vector<double> dx(g.size());
    for (size_t i = 0; i < dx.size(); ++i) dx[i] = gv[i] * yv[i] * (1.0 - yv[i]);
    return std::vector<Tensor>{Tensor::from(res.shape(), std::move(dx))};
  });
}

Tensor sqrt(const Tensor& x) {
  auto xv = x.values();
  std::vector<double> out(x.size());
  for (size_t i = 0; i < out.size(); ++i) {
    if (xv[i] < 0.0) throw ValidationError("sqrt: negative input at index " + std::to_string(i));
    out[i] = std::sqrt(xv[i]);
  }
  Tensor res = Tensor::from(x.shape(), std::move(out));
  return finish("sqrt", {&x}, res, [res](const Tensor& g) {
    auto yv = res.values();
    auto gv = g.values();
    std::vector<double> dx(g.size());
    for (size_t i = 0; i < dx.size(); ++i) {
      if (yv[i] == 0.0) throw ValidationError("sqrt: gradient at zero input");
      dx[i] = gv[i] / (2.0 * yv[i]);
    }
    return std::vector<Tensor>{Tensor::from(res.shape(), std::move(dx))};
  });
}

Tensor concat(const std::vector<Tensor>& xs, int axis) {
  if (xs.empty()) throw ValidationError("concat: needs at least one input");
  if (axis != 0 && axis != 1) throw ValidationError("concat: axis must be 0 or 1");
  for (const Tensor& t : xs) require_rank2(t, "concat");
  const int fixed = axis == 0 ? xs[0].cols() : xs[0].rows();
  int total = 0;
  for (const Tensor& t : xs) {
    const int f = axis == 0 ? t.cols() : t.rows();
    if (f != fixed) {
      throw ValidationError("concat: shapes " + xs[0].shape_str() + " and " + t.shape_str() +
                            " disagree off the concat axis");
    }
    total += axis == 0 ? t.rows() : t.cols();
  }
  const int n = axis == 0 ? total : fixed;
  const int m = axis == 0 ? fixed : total;
  std::vector<double> out(static_cast<size_t>(n) * m);
  if (axis == 0) {
    size_t off = 0;
    for (const Tensor& t : xs) {
      auto tv = t.values();
      std::copy(tv.begin(), tv.end(), out.begin() + off);
      off += tv.size();
    }
  } else {
    int coff = 0;
    for (const Tensor& t : xs) {
      auto tv = t.values();
      const int tc = t.cols();
      for (int i = 0; i < n; ++i)
        std::copy(tv.begin() + static_cast<size_t>(i) * tc, tv.begin() + static_cast<size_t>(i + 1) * tc,
                  out.begin() + static_cast<size_t>(i) * m + coff);
      coff += tc;
    }
  }
  Tensor res = Tensor::from({n, m}, std::move(out));

  Graph* g = nullptr;
  for (const Tensor& t : xs) {
    if (t.graph()) {
      if (g && g != t.graph()) throw ValidationError("concat mixes tensors from two graphs");
      g = t.graph();
    }
  }
  if (!g) return res;
  std::vector<int> nodes;
  std::vector<std::vector<int>> shapes;
  std::vector<int> sizes;
  for (const Tensor& t : xs) {
    nodes.push_back(t.graph() ? t.node() : -1);
    shapes.push_back(t.shape());
    sizes.push_back(axis == 0 ? t.rows() : t.cols());
  }
  return g->record("concat", std::move(nodes), std::move(res),
                   [shapes, sizes, axis, n, m](const Tensor& up) {
                     std::vector<Tensor> grads;
                     auto gv = up.values();
                     int off = 0;
                     for (size_t t = 0; t < shapes.size(); ++t) {
                       const int sz = sizes[t];
                       std::vector<double> d(shape_numel(shapes[t]));
                       if (axis == 0) {
                         std::copy(gv.begin() + static_cast<size_t>(off) * m,
                                   gv.begin() + static_cast<size_t>(off + sz) * m, d.begin());
                       } else {
                         for (int i = 0; i < n; ++i)
                           std::copy(gv.begin() + static_cast<size_t>(i) * m + off,
                                     gv.begin() + static_cast<size_t>(i) * m + off + sz,
                                     d.begin() + static_cast<size_t>(i) * sz);
                       }
                       grads.push_back(Tensor::from(shapes[t], std::move(d)));
                       off += sz;
                     }
                     return grads;
                   });
}

Tensor reshape(const Tensor& x, std::vector<int> shape) {
  if (shape_numel(shape) != x.size()) {
    throw ValidationError("reshape: " + x.shape_str() + " to " + shape_to_string(shape) +
                          " changes element count");
  }
  Tensor res = Tensor::from(shape, std::vector<double>(x.values().begin(), x.values().end()));
  return finish("reshape", {&x}, std::move(res), [xshape = x.shape()](const Tensor& g) {
    return std::vector<Tensor>{
        Tensor::from(xshape, std::vector<double>(g.values().begin(), g.values().end()))};
  });
}

Tensor max_reduce(const Tensor& x, int axis) {
  require_rank2(x, "max-reduce");
  if (axis != 0 && axis != 1) throw ValidationError("max-reduce: axis must be 0 or 1");
  const int n = x.rows(), m = x.cols();
  auto xv = x.values();
  std::vector<double> out;
  std::vector<int> arg;
  if (axis == 0) {
    out.assign(m, 0.0);
    arg.assign(m, 0);
    for (int j = 0; j < m; ++j) {
      double best = xv[j];
      int bi = 0;
      for (int i = 1; i < n; ++i) {
        const double v = xv[static_cast<size_t>(i) * m + j];
        if (v > best) {
          best = v;
          bi = i;
        }
      }
      out[j] = best;
      arg[j] = bi;
    }
  } else {
    out.assign(n, 0.0);
    arg.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      const double* row = xv.data() + static_cast<size_t>(i) * m;
      double best = row[0];
      int bj = 0;
      for (int j = 1; j < m; ++j) {
        if (row[j] > best) {
          best = row[j];
          bj = j;
        }
      }
      out[i] = best;
      arg[i] = bj;
    }
  }
  Tensor res = Tensor::from(axis == 0 ? std::vector<int>{1, m} : std::vector<int>{n, 1}, std::move(out));
  return finish("max-reduce", {&x}, std::move(res),
                [arg = std::move(arg), xshape = x.shape(), n, m, axis](const Tensor& g) {
                  std::vector<double> dx(static_cast<size_t>(n) * m, 0.0);
                  auto gv = g.values();
                  if (axis == 0) {
                    for (int j = 0; j < m; ++j) dx[static_cast<size_t>(arg[j]) * m + j] = gv[j];
                  } else {
                    for (int i = 0; i < n; ++i) dx[static_cast<size_t>(i) * m + arg[i]] = gv[i];
                  }
                  return std::vector<Tensor>{Tensor::from(xshape, std::move(dx))};
                });
}

Tensor mean(const Tensor& x) {
  double s = 0.0;
  for (double v : x.values()) s += v;
  const double n = static_cast<double>(x.size());
  Tensor res = Tensor::scalar(s / n);
  return finish("mean", {&x}, std::move(res), [xshape = x.shape(), n](const Tensor& g) {
    return std::vector<Tensor>{Tensor::full(xshape, g.value() / n)};
  });
}

Tensor sum(const Tensor& x) {
  double s = 0.0;
  for (double v : x.values()) s += v;
  Tensor res = Tensor::scalar(s);
  return finish("sum", {&x}, std::move(res), [xshape = x.shape()](const Tensor& g) {
    return std::vector<Tensor>{Tensor::full(xshape, g.value())};
  });
}

Tensor transpose(const Tensor& x) {
  require_rank2(x, "transpose");
  const int n = x.rows(), m = x.cols();
  auto xv = x.values();
  std::vector<double> out(x.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) out[static_cast<size_t>(j) * n + i] = xv[static_cast<size_t>(i) * m + j];
  Tensor res = Tensor::from({m, n}, std::move(out));
  return finish("transpose", {&x}, std::move(res), [xshape = x.shape(), n, m](const Tensor& g) {
    auto gv = g.values();
    std::vector<double> dx(gv.size());
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < n; ++i) dx[static_cast<size_t>(i) * m + j] = gv[static_cast<size_t>(j) * n + i];
    return std::vector<Tensor>{Tensor::from(xshape, std::move(dx))};
  });
}

Tensor slice(const Tensor& x, int axis, int start, int len) {
  require_rank2(x, "slice");
  if (axis != 0 && axis != 1) throw ValidationError("slice: axis must be 0 or 1");
  const int n = x.rows(), m = x.cols();
  const int extent = axis == 0 ? n : m;
  if (start < 0 || len <= 0 || start + len > extent) {
    throw ValidationError("slice: range [" + std::to_string(start) + ", " + std::to_string(start + len) +
                          ") outside shape " + x.shape_str());
  }
  auto xv = x.values();
  std::vector<double> out;
  if (axis == 0) {
    out.assign(xv.begin() + static_cast<size_t>(start) * m, xv.begin() + static_cast<size_t>(start + len) * m);
  } else {
    out.resize(static_cast<size_t>(n) * len);
    for (int i = 0; i < n; ++i)
      std::copy(xv.begin() + static_cast<size_t>(i) * m + start,
                xv.begin() + static_cast<size_t>(i) * m + start + len, out.begin() + static_cast<size_t>(i) * len);
  }
  Tensor res = Tensor::from(axis == 0 ? std::vector<int>{len, m} : std::vector<int>{n, len}, std::move(out));
  return finish("slice", {&x}, std::move(res), [xshape = x.shape(), axis, start, len, n, m](const Tensor& g) {
    std::vector<double> dx(static_cast<size_t>(n) * m, 0.0);
    auto gv = g.values();
    if (axis == 0) {
      std::copy(gv.begin(), gv.end(), dx.begin() + static_cast<size_t>(start) * m);
    } else {
      for (int i = 0; i < n; ++i)
        std::copy(gv.begin() + static_cast<size_t>(i) * len, gv.begin() + static_cast<size_t>(i + 1) * len,
                  dx.begin() + static_cast<size_t>(i) * m + start);
    }
    return std::vector<Tensor>{Tensor::from(xshape, std::move(dx))};
  });
}

Tensor gather_rows(const Tensor& x, std::span<const int> indices) {
  require_rank2(x, "gather-rows");
  const int n = x.rows(), m = x.cols();
  auto xv = x.values();
  std::vector<double> out(indices.size() * static_cast<size_t>(m), 0.0);
  for (size_t r = 0; r < indices.size(); ++r) {
    const int i = indices[r];
    if (i < -1 || i >= n) {
      throw ValidationError("gather-rows: index " + std::to_string(i) + " outside " + x.shape_str());
    }
    if (i >= 0) {
      std::copy(xv.begin() + static_cast<size_t>(i) * m, xv.begin() + static_cast<size_t>(i + 1) * m,
                out.begin() + r * m);
    }
  }
  Tensor res = Tensor::from({static_cast<int>(indices.size()), m}, std::move(out));
  std::vector<int> idx(indices.begin(), indices.end());
  return finish("gather-rows", {&x}, std::move(res), [idx = std::move(idx), xshape = x.shape(), n, m](const Tensor& g) {
    std::vector<double> dx(static_cast<size_t>(n) * m, 0.0);
    auto gv = g.values();
    for (size_t r = 0; r < idx.size(); ++r) {
      if (idx[r] < 0) continue;
      double* drow = dx.data() + static_cast<size_t>(idx[r]) * m;
      const double* grow = gv.data() + r * m;
      for (int j = 0; j < m; ++j) drow[j] += grow[j];
    }
    return std::vector<Tensor>{Tensor::from(xshape, std::move(dx))};
  });
}

Tensor repeat_rows(const Tensor& x, int n) {
  require_rank2(x, "repeat-rows");
  if (x.rows() != 1) throw ValidationError("repeat-rows: input must be a single row, got " + x.shape_str());
  const int m = x.cols();
  auto xv = x.values();
  std::vector<double> out(static_cast<size_t>(n) * m);
  for (int i = 0; i < n; ++i) std::copy(xv.begin(), xv.end(), out.begin() + static_cast<size_t>(i) * m);
  Tensor res = Tensor::from({n, m}, std::move(out));
  return finish("repeat-rows", {&x}, std::move(res), [xshape = x.shape(), n, m](const Tensor& g) {
    std::vector<double> dx(m, 0.0);
    auto gv = g.values();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) dx[j] += gv[static_cast<size_t>(i) * m + j];
    return std::vector<Tensor>{Tensor::from(xshape, std::move(dx))};
  });
}

Tensor scale(const Tensor& x, double k) {
  std::vector<double> out(x.size());
  auto xv = x.values();
  for (size_t i = 0; i < out.size(); ++i) out[i] = xv[i] * k;
  Tensor res = Tensor::from(x.shape(), std::move(out));
  return finish("scale", {&x}, std::move(res), [xshape = x.shape(), k](const Tensor& g) {
    std::vector<double> dx(g.size());
    auto gv = g.values();
    for (size_t i = 0; i < dx.size(); ++i) dx[i] = gv[i] * k;
    return std::vector<Tensor>{Tensor::from(xshape, std::move(dx))};
  });
}

Tensor forward_primitive(OpTag tag, std::span<const Tensor> inputs, std::span<const int> args) {
  auto need = [&](size_t n, const char* name) {
    if (inputs.size() != n) {
      throw ValidationError(std::string(name) + ": expected " + std::to_string(n) + " inputs, got " +
                            std::to_string(inputs.size()));
    }
  };
  switch (tag) {
    case OpTag::kMatmul:
      need(2, "matmul");
      return matmul(inputs[0], inputs[1]);
    case OpTag::kAdd:
      need(2, "add");
      return add(inputs[0], inputs[1]);
    case OpTag::kMul:
      need(2, "mul");
      return mul(inputs[0], inputs[1]);
    case OpTag::kRelu:
      need(1, "relu");
      return relu(inputs[0]);
    case OpTag::kSoftmax:
      need(1, "softmax");
      return softmax(inputs[0]);
    case OpTag::kLayerNorm:
      need(1, "layer-norm");
      return layer_norm(inputs[0]);
    case OpTag::kConcat: {
      if (args.size() != 1) throw ValidationError("concat: missing axis argument");
      return concat(std::vector<Tensor>(inputs.begin(), inputs.end()), args[0]);
    }
    case OpTag::kReshape:
      need(1, "reshape");
      return reshape(inputs[0], std::vector<int>(args.begin(), args.end()));
    case OpTag::kMaxReduce:
      need(1, "max-reduce");
      if (args.size() != 1) throw ValidationError("max-reduce: missing axis argument");
      return max_reduce(inputs[0], args[0]);
    case OpTag::kLog:
      need(1, "log");
      return log(inputs[0]);
    case OpTag::kSigmoid:
      need(1, "sigmoid");
      return sigmoid(inputs[0]);
    case OpTag::kMean:
      need(1, "mean");
      return mean(inputs[0]);
  }
  throw ValidationError("forward_primitive: unknown tag");
}

}  // namespace dttd::num
