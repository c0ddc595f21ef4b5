#include "vlcsync/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "vlcsync/errors.hpp"

namespace vlcsync {

namespace {

double abs_sum(const LaurentPoly& p) {
  double s = 0.0;
  p.for_each_term([&](int, double c) { s += std::abs(c); });
  return s;
}

std::optional<int> narrower(const std::optional<int>& a, const std::optional<int>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

LaurentPoly::LaurentPoly(std::initializer_list<std::pair<int, double>> terms) {
  for (const auto& [e, c] : terms) add_term(e, c);
}

LaurentPoly LaurentPoly::monomial(int exponent, double coeff) {
  LaurentPoly p;
  p.add_term(exponent, coeff);
  return p;
}

double LaurentPoly::coeff(int exponent) const noexcept {
  if (coeffs_.empty() || exponent < offset_ || exponent > max_exponent()) return 0.0;
  return coeffs_[static_cast<std::size_t>(exponent - offset_)];
}

std::vector<std::pair<int, double>> LaurentPoly::terms() const {
  std::vector<std::pair<int, double>> out;
  for_each_term([&](int e, double c) { out.emplace_back(e, c); });
  return out;
}

void LaurentPoly::ensure_range(int lo, int hi) {
  if (coeffs_.empty()) {
    offset_ = lo;
    coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    return;
  }
  if (lo < offset_) {
    coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(offset_ - lo), 0.0);
    offset_ = lo;
  }
  if (hi > max_exponent()) coeffs_.resize(static_cast<std::size_t>(hi - offset_ + 1), 0.0);
}

void LaurentPoly::normalize() {
  for (double& c : coeffs_) {
    if (c != 0.0 && std::abs(c) < kUnderflowCutoff) {
      lost_ += std::abs(c);
      c = 0.0;
    }
  }
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](double c) { return c != 0.0; });
  if (first == coeffs_.end()) {
    coeffs_.clear();
    offset_ = 0;
    return;
  }
  auto last = std::find_if(coeffs_.rbegin(), coeffs_.rend(), [](double c) { return c != 0.0; });
  coeffs_.erase(last.base(), coeffs_.end());
  offset_ += static_cast<int>(first - coeffs_.begin());
  coeffs_.erase(coeffs_.begin(), first);
}

void LaurentPoly::add_term(int exponent, double coeff) {
  if (coeff == 0.0) return;
  if (window_ && std::abs(exponent) > *window_) {
    lost_ += std::abs(coeff);
    return;
  }
  ensure_range(exponent, exponent);
  double& slot = coeffs_[static_cast<std::size_t>(exponent - offset_)];
  slot += coeff;
  if (slot != 0.0 && std::abs(slot) < kUnderflowCutoff) {
    lost_ += std::abs(slot);
    slot = 0.0;
  }
  if (slot == 0.0) normalize();
}

void LaurentPoly::set_window(int half_width) {
  if (half_width < 0) throw Error(ErrorCode::InvalidArgument, "negative window");
  window_ = half_width;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const int e = offset_ + static_cast<int>(i);
    if (std::abs(e) > half_width && coeffs_[i] != 0.0) {
      lost_ += std::abs(coeffs_[i]);
      coeffs_[i] = 0.0;
    }
  }
  normalize();
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  window_ = narrower(window_, other.window_);
  lost_ += other.lost_;
  if (!other.coeffs_.empty()) {
    ensure_range(other.min_exponent(), other.max_exponent());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) {
      coeffs_[static_cast<std::size_t>(other.offset_ - offset_) + i] += other.coeffs_[i];
    }
  }
  if (window_) {
    set_window(*window_);
  } else {
    normalize();
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  lost_ *= std::abs(s);
  normalize();
  return *this;
}

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q) {
  LaurentPoly r = p;
  r += q;
  return r;
}

LaurentPoly scale(const LaurentPoly& p, double s) {
  LaurentPoly r = p;
  r *= s;
  return r;
}

LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q) {
  LaurentPoly r;
  r.window_ = narrower(p.window_, q.window_);
  r.lost_ = p.lost_ * (abs_sum(q) + q.lost_) + q.lost_ * abs_sum(p);
  if (p.is_zero() || q.is_zero()) return r;

  int lo = p.min_exponent() + q.min_exponent();
  int hi = p.max_exponent() + q.max_exponent();
  // Only the in-window part of the product is accumulated; the rest is charged
  // to lost mass term by term.
  int keep_lo = lo;
  int keep_hi = hi;
  if (r.window_) {
    keep_lo = std::max(lo, -*r.window_);
    keep_hi = std::min(hi, *r.window_);
  }
  if (keep_lo <= keep_hi) {
    r.offset_ = keep_lo;
    r.coeffs_.assign(static_cast<std::size_t>(keep_hi - keep_lo + 1), 0.0);
  }
  const std::size_t np = p.coeffs_.size();
  const std::size_t nq = q.coeffs_.size();
  for (std::size_t i = 0; i < np; ++i) {
    const double a = p.coeffs_[i];
    if (a == 0.0) continue;
    const int ei = p.offset_ + static_cast<int>(i);
    for (std::size_t j = 0; j < nq; ++j) {
      const double b = q.coeffs_[j];
      if (b == 0.0) continue;
      const int e = ei + q.offset_ + static_cast<int>(j);
      if (e < keep_lo || e > keep_hi) {
        r.lost_ += std::abs(a * b);
      } else {
        r.coeffs_[static_cast<std::size_t>(e - keep_lo)] += a * b;
      }
    }
  }
  r.normalize();
  return r;
}

LaurentPoly power(const LaurentPoly& p, unsigned e) {
  LaurentPoly r = LaurentPoly::unit();
  if (p.window()) r.set_window(*p.window());
  for (unsigned k = 0; k < e; ++k) r = mul(r, p);
  return r;
}

double mass(const LaurentPoly& p) {
  double s = 0.0;
  p.for_each_term([&](int, double c) { s += c; });
  return s;
}

double mean(const LaurentPoly& p) {
  const double m = mass(p);
  if (p.is_zero() || m == 0.0) throw Error(ErrorCode::ZeroMass, "mean of a zero-mass polynomial");
  double s = 0.0;
  p.for_each_term([&](int e, double c) { s += e * c; });
  return s / m;
}

double variance(const LaurentPoly& p) {
  const double mu = mean(p);
  const double m = mass(p);
  double s = 0.0;
  p.for_each_term([&](int e, double c) { s += (e - mu) * (e - mu) * c; });
  return s / m;
}

LaurentPoly fold_mod(const LaurentPoly& p, int modulus) {
  if (modulus < 1) throw Error(ErrorCode::InvalidArgument, "fold modulus must be >= 1");
  std::vector<double> residues(static_cast<std::size_t>(modulus), 0.0);
  p.for_each_term([&](int e, double c) {
    const int r = ((e % modulus) + modulus) % modulus;
    residues[static_cast<std::size_t>(r)] += c;
  });
  LaurentPoly out;
  for (int r = 0; r < modulus; ++r) out.add_term(r, residues[static_cast<std::size_t>(r)]);
  out.lost_ += p.lost_;
  return out;
}

double entropy_bits(const LaurentPoly& p) {
  const double m = mass(p);
  if (std::abs(m - 1.0) > kEntropyMassTolerance) {
    throw Error(ErrorCode::InvalidArgument, "entropy of a non-probability polynomial (mass " +
                                                std::to_string(m) + ")");
  }
  double h = 0.0;
  p.for_each_term([&](int, double c) {
    if (c < 0.0) throw Error(ErrorCode::InvalidArgument, "entropy of negative coefficient");
    const double q = c / m;
    h -= q * std::log2(q);
  });
  return h;
}

int pseudo_degree(const LaurentPoly& p, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw Error(ErrorCode::InvalidArgument, "eta must lie in (0, 1)");
  if (p.lost_mass() >= eta) {
    throw Error(ErrorCode::NotConverged, "lost mass " + std::to_string(p.lost_mass()) +
                                             " prevents certifying a tail below eta");
  }
  const int reach = p.is_zero() ? 0 : std::max(std::abs(p.min_exponent()), std::abs(p.max_exponent()));
  if (reach <= 1) return 1;
  // tail(d) = sum over |i| > d, accumulated from the outside in.
  double tail = 0.0;
  int best = reach;
  for (int d = reach - 1; d >= 1; --d) {
    tail += p.coeff(d + 1) + p.coeff(-(d + 1));
    if (tail < eta) {
      best = d;
    } else {
      break;
    }
  }
  return best;
}

std::string to_string(const LaurentPoly& p, int precision) {
  if (p.is_zero()) return "0";
  std::string out;
  char buf[64];
  p.for_each_term([&](int e, double c) {
    if (!out.empty()) out += " + ";
    std::snprintf(buf, sizeof buf, "%.*g", precision, c);
    out += buf;
    if (e == 1) {
      out += "y";
    } else if (e != 0) {
      out += "y^" + std::to_string(e);
    }
  });
  return out;
}

std::string dump_terms(const LaurentPoly& p) {
  std::string out;
  char buf[64];
  p.for_each_term([&](int e, double c) {
    std::snprintf(buf, sizeof buf, "%d\t%.17g\n", e, c);
    out += buf;
  });
  return out;
}

}  // namespace vlcsync
