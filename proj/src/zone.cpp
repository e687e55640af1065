#include "nzf/zone.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nzf {

namespace {

DbmMatrix universal_matrix(std::size_t dim) {
  DbmMatrix m = DbmMatrix::Constant(dim, dim, kInfinity);
  m.row(0).setConstant(kLeZero);
  m.diagonal().setConstant(kLeZero);
  return m;
}

// Floyd-Warshall on bounds. Returns false on a negative cycle.
bool close(DbmMatrix& m) {
  const auto n = m.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const raw_t ik = m(i, k);
      if (ik == kInfinity) continue;
      for (Eigen::Index j = 0; j < n; ++j) {
        const raw_t via = bound_add(ik, m(k, j));
        if (via < m(i, j)) m(i, j) = via;
      }
    }
    if (m(k, k) < kLeZero) return false;
  }
  for (Eigen::Index i = 0; i < n; ++i)
    if (m(i, i) < kLeZero) return false;
  return true;
}

}  // namespace

Zone Zone::universal(std::size_t dim) { return Zone(dim, universal_matrix(dim), false); }

Zone Zone::zero(std::size_t dim) {
  DbmMatrix m = DbmMatrix::Constant(dim, dim, kLeZero);
  return Zone(dim, std::move(m), false);
}

Zone Zone::empty(std::size_t dim) { return Zone(dim, universal_matrix(dim), true); }

Zone Zone::from_matrix(DbmMatrix m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("zone matrix must be square");
  const auto dim = static_cast<std::size_t>(m.rows());
  return canonicalize(Zone(dim, std::move(m), false));
}

Zone& Zone::constrain(ClockIndex i, ClockIndex j, raw_t b) {
  if (empty_ || b >= m_(i, j)) return *this;
  if (bound_add(b, m_(j, i)) < kLeZero) {
    empty_ = true;
    return *this;
  }
  m_(i, j) = b;
  // Incremental closure: only paths through the new edge i -> j can improve.
  const auto n = static_cast<Eigen::Index>(dim_);
  const auto ii = static_cast<Eigen::Index>(i);
  const auto jj = static_cast<Eigen::Index>(j);
  for (Eigen::Index k = 0; k < n; ++k) {
    const raw_t ki = m_(k, ii);
    if (ki == kInfinity) continue;
    const raw_t kij = bound_add(ki, b);
    for (Eigen::Index l = 0; l < n; ++l) {
      const raw_t via = bound_add(kij, m_(jj, l));
      if (via < m_(k, l)) m_(k, l) = via;
    }
  }
  return *this;
}

bool Zone::operator==(const Zone& other) const {
  if (dim_ != other.dim_) return false;
  if (empty_ || other.empty_) return empty_ == other.empty_;
  return m_ == other.m_;
}

std::string Zone::to_string(const std::vector<std::string>& names) const {
  if (empty_) return "false";
  auto name = [&](std::size_t i) {
    if (i == 0) return std::string("0");
    if (i - 1 < names.size()) return names[i - 1];
    return "c" + std::to_string(i);
  };
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const std::string& s) {
    if (!first) os << " && ";
    os << s;
    first = false;
  };
  for (std::size_t i = 1; i < dim_; ++i) {
    const raw_t lo = m_(0, i);
    const raw_t hi = m_(i, 0);
    if (lo != kLeZero) emit(name(i) + (is_weak(lo) ? " >= " : " > ") + std::to_string(-bound_value(lo)));
    if (!is_infinite(hi)) emit(name(i) + (is_weak(hi) ? " <= " : " < ") + std::to_string(bound_value(hi)));
  }
  for (std::size_t i = 1; i < dim_; ++i)
    for (std::size_t j = 1; j < dim_; ++j) {
      if (i == j || is_infinite(m_(i, j))) continue;
      // Skip diagonals implied by the absolute bounds.
      if (bound_add(m_(i, 0), m_(0, j)) <= m_(i, j)) continue;
      emit(name(i) + " - " + name(j) + " " + bound_to_string(m_(i, j)));
    }
  if (first) return "true";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Zone& z) { return os << z.to_string(); }

Zone canonicalize(Zone z) {
  if (z.empty_) return z;
  if (!close(z.m_)) z.empty_ = true;
  return z;
}

Zone intersect(const Zone& a, const Zone& b) {
  if (a.is_empty()) return a;
  if (b.is_empty()) return b;
  if (a.dim() != b.dim()) throw std::invalid_argument("zone dimension mismatch");
  Zone r = a;
  const auto n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && b.at(i, j) < r.at(i, j)) r.constrain(i, j, b.at(i, j));
  return r;
}

bool includes(const Zone& outer, const Zone& inner) {
  if (inner.is_empty()) return true;
  if (outer.is_empty()) return false;
  return (inner.matrix().array() <= outer.matrix().array()).all();
}

Zone time_down(const Zone& z) {
  if (z.is_empty()) return z;
  DbmMatrix m = z.matrix();
  m.row(0).setConstant(kLeZero);
  // The new lower bound of x_i is the tightest one implied through any x_j >= 0.
  const auto n = m.rows();
  for (Eigen::Index i = 1; i < n; ++i)
    for (Eigen::Index j = 1; j < n; ++j)
      if (m(j, i) < m(0, i)) m(0, i) = m(j, i);
  return Zone::from_matrix(std::move(m));
}

Zone time_up(const Zone& z) {
  if (z.is_empty()) return z;
  DbmMatrix m = z.matrix();
  m.col(0).setConstant(kInfinity);
  m(0, 0) = kLeZero;
  return Zone::from_matrix(std::move(m));
}

Zone free_clock(const Zone& z, ClockIndex x) {
  if (x == 0) throw std::invalid_argument("cannot free the reference clock");
  if (z.is_empty()) return z;
  DbmMatrix m = z.matrix();
  const auto n = m.rows();
  const auto xi = static_cast<Eigen::Index>(x);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j == xi) continue;
    m(xi, j) = kInfinity;
    m(j, xi) = m(j, 0);
  }
  return Zone::from_matrix(std::move(m));
}

Zone reset_pre(const Zone& z, const std::vector<ClockIndex>& clocks) {
  Zone r = z;
  for (auto x : clocks) {
    r.constrain(x, 0, kLeZero);
    r.constrain(0, x, kLeZero);
  }
  for (auto x : clocks) r = free_clock(r, x);
  return r;
}

Zone reset(const Zone& z, const std::vector<ClockIndex>& clocks) {
  if (z.is_empty()) return z;
  DbmMatrix m = z.matrix();
  const auto n = m.rows();
  for (auto x : clocks) {
    const auto xi = static_cast<Eigen::Index>(x);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == xi) continue;
      m(xi, j) = m(0, j);
      m(j, xi) = m(j, 0);
    }
  }
  return Zone::from_matrix(std::move(m));
}

std::vector<Zone> subtract(const Zone& a, const Zone& b) {
  if (a.is_empty()) return {};
  if (b.is_empty()) return {a};
  if (intersect(a, b).is_empty()) return {a};
  std::vector<Zone> pieces;
  Zone prefix = a;
  const auto n = a.dim();
  for (std::size_t i = 0; i < n && !prefix.is_empty(); ++i) {
    for (std::size_t j = 0; j < n && !prefix.is_empty(); ++j) {
      if (i == j) continue;
      const raw_t c = b.at(i, j);
      if (c >= prefix.at(i, j)) continue;  // already implied by the prefix
      Zone piece = prefix;
      piece.constrain(j, i, bound_negate(c));
      if (!piece.is_empty()) pieces.push_back(std::move(piece));
      prefix.constrain(i, j, c);
    }
  }
  return pieces;
}

std::vector<Zone> complement(const Zone& z) { return subtract(Zone::universal(z.dim()), z); }

Zone normalize_ceiling(const Zone& z, Ceiling c) {
  if (z.is_empty()) return z;
  const raw_t upper = weak(c.value);
  const raw_t lower = strict(-c.value);
  // One extrapolation pass, then one closure. Repeating the pass need not
  // converge: closure can re-tighten a bound that was just loosened.
  DbmMatrix m = z.matrix();
  bool changed = false;
  const auto n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j || is_infinite(m(i, j))) continue;
      if (m(i, j) > upper) {
        m(i, j) = kInfinity;
        changed = true;
      } else if (m(i, j) < lower) {
        m(i, j) = lower;
        changed = true;
      }
    }
  if (!changed) return z;
  return Zone::from_matrix(std::move(m));
}

bool has_no_upper_bounds(const Zone& z) {
  if (z.is_empty()) return false;
  for (std::size_t i = 1; i < z.dim(); ++i)
    if (!is_infinite(z.at(i, 0))) return false;
  return true;
}

Zone close_upper_bounds(const Zone& z) {
  if (z.is_empty()) return z;
  DbmMatrix m = z.matrix();
  bool changed = false;
  for (Eigen::Index i = 1; i < m.rows(); ++i)
    if (!is_infinite(m(i, 0)) && !is_weak(m(i, 0))) {
      m(i, 0) |= 1;
      changed = true;
    }
  if (!changed) return z;
  return Zone::from_matrix(std::move(m));
}

}  // namespace nzf
