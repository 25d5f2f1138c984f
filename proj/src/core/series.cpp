#include <algorithm>
#include <bit>
#include <cassert>
#include <charconv>
#include <utility>

#include "lreg/error.hpp"
#include "lreg/qseries.hpp"

namespace lreg {

// ---------------------------------------------------------------------------
// Ring

Ring Ring::mod_pow2(int bits) {
  if (bits < 1 || bits > 63) {
    throw InvalidArgument("mod 2^k ring requires 1 <= k <= 63, got k=" + std::to_string(bits));
  }
  return Ring(bits);
}

std::uint64_t Ring::mask() const {
  if (bits_ == 0) return ~std::uint64_t{0};
  return (std::uint64_t{1} << bits_) - 1;
}

BigInt Ring::modulus() const {
  if (bits_ == 0) return 0;
  BigInt m;
  mpz_ui_pow_ui(m.get_mpz_t(), 2, static_cast<unsigned long>(bits_));
  return m;
}

std::string Ring::name() const {
  if (bits_ == 0) return "exact";
  return "mod2^" + std::to_string(bits_);
}

namespace {

int parse_small(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return -1;
  return v;
}

}  // namespace

Ring Ring::parse(std::string_view text) {
  if (text == "exact" || text == "ZZ" || text == "0") return exact();
  std::string_view t = text;
  if (t.starts_with("mod")) t.remove_prefix(3);
  if (t.starts_with("2^")) {
    const int k = parse_small(t.substr(2));
    if (k >= 1 && k <= 63) return mod_pow2(k);
  } else {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (!t.empty() && ec == std::errc() && ptr == t.data() + t.size() && v >= 2 &&
        std::has_single_bit(v)) {
      return mod_pow2(std::countr_zero(v));
    }
  }
  throw InvalidArgument("unrecognised ring or modulus '" + std::string(text) +
                        "' (expected exact, mod2^k or a power of two)");
}

bool Ring::supports_modulus(const BigInt& u) const {
  if (u < 1) return false;
  if (is_exact()) return true;
  if (mpz_popcount(u.get_mpz_t()) != 1) return false;
  return mpz_sizeinbase(u.get_mpz_t(), 2) - 1 <= static_cast<std::size_t>(bits_);
}

// ---------------------------------------------------------------------------
// Packed-bit helpers for Z/2

namespace {

using Words = std::vector<std::uint64_t>;

std::int64_t words_for(std::int64_t nbits) { return (nbits + 63) / 64; }

bool get_bit(const Words& w, std::int64_t i) { return (w[i >> 6] >> (i & 63)) & 1U; }

void flip_bit(Words& w, std::int64_t i) { w[i >> 6] ^= std::uint64_t{1} << (i & 63); }

void mask_tail(Words& w, std::int64_t nbits) {
  if (nbits & 63) w.back() &= (std::uint64_t{1} << (nbits & 63)) - 1;
}

// Bits start..start+63 of w (zero outside the stored range).
std::uint64_t window(const std::uint64_t* w, std::int64_t nw, std::int64_t start) {
  if (start <= -64) return 0;
  if (start < 0) return w[0] << (-start);
  const std::int64_t i = start >> 6;
  const int sh = static_cast<int>(start & 63);
  if (i >= nw) return 0;
  std::uint64_t v = w[i] >> sh;
  if (sh != 0 && i + 1 < nw) v |= w[i + 1] << (64 - sh);
  return v;
}

// out ^= src << shift, restricted to the first out_bits bits.
void xor_shifted(Words& out, std::int64_t out_bits, const Words& src, std::int64_t shift) {
  const auto nw = static_cast<std::int64_t>(out.size());
  const auto ns = static_cast<std::int64_t>(src.size());
  const std::int64_t ws = shift >> 6;
  const int bs = static_cast<int>(shift & 63);
  if (bs == 0) {
    const std::int64_t end = std::min(nw, ws + ns);
    for (std::int64_t i = ws; i < end; ++i) out[i] ^= src[i - ws];
  } else {
    const std::int64_t end = std::min(nw, ws + ns + 1);
    for (std::int64_t i = ws; i < end; ++i) {
      const std::int64_t j = i - ws;
      std::uint64_t v = j < ns ? src[j] << bs : 0;
      if (j >= 1) v |= src[j - 1] >> (64 - bs);
      out[i] ^= v;
    }
  }
  mask_tail(out, out_bits);
}

// In place: solve out * (1 + sum_{j in taps} q^j) = x over Z/2, where out
// holds x on entry. taps are ascending and >= 1.
void bits_divide_inplace(Words& out, std::int64_t nbits, const std::vector<std::int64_t>& taps) {
  const auto nw = static_cast<std::int64_t>(out.size());
  std::vector<std::int64_t> near, far;
  for (const std::int64_t j : taps) {
    if (j > nbits) break;
    (j < 64 ? near : far).push_back(j);
  }
  const std::uint64_t* base = out.data();
  for (std::int64_t w = 0; w < nw; ++w) {
    std::uint64_t acc = out[w];
    const std::int64_t pos = w * 64;
    for (const std::int64_t j : far) {
      if (j >= pos + 64) break;
      acc ^= window(base, nw, pos - j);
    }
    if (near.empty()) {
      out[w] = acc;
      continue;
    }
    std::uint64_t cur = 0;
    for (int b = 0; b < 64; ++b) {
      std::uint64_t v = (acc >> b) & 1U;
      const std::int64_t n = pos + b;
      for (const std::int64_t j : near) {
        const std::int64_t src = n - j;
        if (src < 0) break;
        if (src >= pos) {
          v ^= (cur >> (src - pos)) & 1U;
        } else {
          v ^= get_bit(out, src);
        }
      }
      cur |= v << b;
    }
    out[w] = cur;
  }
  mask_tail(out, nbits);
}

std::vector<std::int64_t> set_bits(const Words& w, std::int64_t limit) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::uint64_t v = w[i];
    while (v != 0) {
      const std::int64_t b = static_cast<std::int64_t>(i) * 64 + std::countr_zero(v);
      if (b > limit) return out;
      out.push_back(b);
      v &= v - 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Word (Z/2^k, k >= 2) and exact kernels

std::uint64_t to_word(const BigInt& z) {
  BigInt r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), z.get_mpz_t(), 64);
  return mpz_get_ui(r.get_mpz_t());
}

std::uint64_t inverse_word(std::uint64_t a) {
  std::uint64_t x = a;  // correct to 3 bits for odd a
  for (int i = 0; i < 5; ++i) x *= 2 - a * x;
  return x;
}

template <typename C>
std::vector<std::pair<std::int64_t, C>> nonzero_taps(const std::vector<C>& c, std::int64_t limit) {
  std::vector<std::pair<std::int64_t, C>> out;
  const std::int64_t end = std::min<std::int64_t>(limit, static_cast<std::int64_t>(c.size()) - 1);
  for (std::int64_t i = 1; i <= end; ++i) {
    if (c[i] != 0) out.emplace_back(i, c[i]);
  }
  return out;
}

// out[n] = inv0 * (x[n] - sum_j y_j out[n-j]) over Z/2^64, blocked so the
// long-range taps run as contiguous sweeps.
void words_divide_inplace(std::vector<std::uint64_t>& out, std::uint64_t inv0,
                          const std::vector<std::pair<std::int64_t, std::uint64_t>>& taps) {
  constexpr std::int64_t kBlock = 1024;
  const auto size = static_cast<std::int64_t>(out.size());
  auto near_end = std::find_if(taps.begin(), taps.end(), [](const auto& t) { return t.first >= kBlock; });
  for (std::int64_t s = 0; s < size; s += kBlock) {
    const std::int64_t e = std::min(size, s + kBlock);
    for (auto it = near_end; it != taps.end(); ++it) {
      const auto [j, yj] = *it;
      if (j >= e) break;
      const std::int64_t from = std::max(s, j);
      std::uint64_t* v = out.data();
      for (std::int64_t n = from; n < e; ++n) v[n] -= yj * v[n - j];
    }
    for (std::int64_t n = s; n < e; ++n) {
      std::uint64_t v = out[n];
      for (auto it = taps.begin(); it != near_end; ++it) {
        if (it->first > n) break;
        v -= it->second * out[n - it->first];
      }
      out[n] = v * inv0;
    }
  }
}

void exact_divide_inplace(std::vector<BigInt>& out, bool negate_result,
                          const std::vector<std::pair<std::int64_t, BigInt>>& taps) {
  const auto size = static_cast<std::int64_t>(out.size());
  for (std::int64_t n = 0; n < size; ++n) {
    BigInt& v = out[n];
    for (const auto& [j, yj] : taps) {
      if (j > n) break;
      mpz_submul(v.get_mpz_t(), yj.get_mpz_t(), out[n - j].get_mpz_t());
    }
    if (negate_result) mpz_neg(v.get_mpz_t(), v.get_mpz_t());
  }
}

const Series::BitData& bits_of(const Series& s) { return std::get<Series::BitData>(s.storage()); }
const Series::WordData& words_of(const Series& s) { return std::get<Series::WordData>(s.storage()); }
const Series::ExactData& exact_of(const Series& s) { return std::get<Series::ExactData>(s.storage()); }

Series::Storage zero_storage(const Ring& ring, std::int64_t trunc) {
  const auto n = static_cast<std::size_t>(trunc + 1);
  if (ring.is_exact()) return Series::ExactData{std::vector<BigInt>(n)};
  if (ring.is_mod2()) return Series::BitData{Words(static_cast<std::size_t>(words_for(trunc + 1)), 0)};
  return Series::WordData{std::vector<std::uint64_t>(n, 0)};
}

void require_same_ring(const Series& x, const Series& y, const char* op) {
  if (!(x.ring() == y.ring())) {
    throw RingMismatch(std::string(op) + ": ring mismatch (" + x.ring().name() + " vs " +
                       y.ring().name() + ")");
  }
}

void mask_words(std::vector<std::uint64_t>& c, std::uint64_t mask) {
  for (auto& v : c) v &= mask;
}

}  // namespace

// ---------------------------------------------------------------------------
// Series

SparseSeries pentagonal_terms(std::int64_t delta, std::int64_t trunc) {
  if (delta < 1) throw InvalidArgument("f_delta requires delta >= 1");
  SparseSeries terms;
  if (trunc < 0) return terms;
  terms.push_back({0, 1});
  for (std::int64_t k = 1;; ++k) {
    const std::int64_t g1 = delta * (k * (3 * k - 1) / 2);
    if (g1 > trunc) break;
    const std::int64_t sign = (k & 1) ? -1 : 1;
    terms.push_back({g1, sign});
    const std::int64_t g2 = delta * (k * (3 * k + 1) / 2);
    if (g2 <= trunc) terms.push_back({g2, sign});
  }
  return terms;
}

Series::Series(Ring ring, std::int64_t trunc) : ring_(ring), trunc_(trunc) {
  if (trunc < 0) throw InvalidArgument("series truncation must be >= 0");
  data_ = zero_storage(ring, trunc);
}

Series::Series(Ring ring, std::int64_t trunc, Storage data)
    : ring_(ring), trunc_(trunc), data_(std::move(data)) {}

Series Series::one(Ring ring, std::int64_t trunc) { return monomial(ring, trunc, 0); }

Series Series::monomial(Ring ring, std::int64_t trunc, std::int64_t exponent, const BigInt& coeff) {
  Series s(ring, trunc);
  if (exponent < 0) throw InvalidArgument("negative exponent in monomial");
  if (exponent > trunc) return s;
  std::visit(
      [&](auto& d) {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, ExactData>) {
          d.c[exponent] = coeff;
        } else if constexpr (std::is_same_v<D, WordData>) {
          d.c[exponent] = to_word(coeff) & ring.mask();
        } else {
          if (mpz_odd_p(coeff.get_mpz_t())) flip_bit(d.w, exponent);
        }
      },
      s.data_);
  return s;
}

Series Series::from_coeffs(Ring ring, const std::vector<BigInt>& coeffs) {
  if (coeffs.empty()) throw InvalidArgument("from_coeffs: empty coefficient list");
  const auto trunc = static_cast<std::int64_t>(coeffs.size()) - 1;
  if (ring.is_exact()) return Series(ring, trunc, ExactData{coeffs});
  Series s(ring, trunc);
  std::visit(
      [&](auto& d) {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, WordData>) {
          for (std::size_t i = 0; i < coeffs.size(); ++i) d.c[i] = to_word(coeffs[i]) & ring.mask();
        } else if constexpr (std::is_same_v<D, BitData>) {
          for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (mpz_odd_p(coeffs[i].get_mpz_t())) flip_bit(d.w, static_cast<std::int64_t>(i));
          }
        }
      },
      s.data_);
  return s;
}

Series Series::from_sparse(Ring ring, const SparseSeries& terms, std::int64_t trunc) {
  Series s(ring, trunc);
  std::visit(
      [&](auto& d) {
        using D = std::decay_t<decltype(d)>;
        for (const auto& t : terms) {
          if (t.exponent < 0 || t.exponent > trunc) continue;
          if constexpr (std::is_same_v<D, ExactData>) {
            d.c[t.exponent] += BigInt(static_cast<long>(t.coeff));
          } else if constexpr (std::is_same_v<D, WordData>) {
            d.c[t.exponent] = (d.c[t.exponent] + static_cast<std::uint64_t>(t.coeff)) & ring.mask();
          } else {
            if (t.coeff & 1) flip_bit(d.w, t.exponent);
          }
        }
      },
      s.data_);
  return s;
}

void Series::check_index(std::int64_t n) const {
  if (n < 0 || n > trunc_) {
    throw TruncationError("coefficient " + std::to_string(n) + " requested from a series truncated at " +
                          std::to_string(trunc_));
  }
}

BigInt Series::coeff(std::int64_t n) const {
  check_index(n);
  return std::visit(
      [&](const auto& d) -> BigInt {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, ExactData>) {
          return d.c[n];
        } else if constexpr (std::is_same_v<D, WordData>) {
          return BigInt(static_cast<unsigned long>(d.c[n]));
        } else {
          return get_bit(d.w, n) ? 1 : 0;
        }
      },
      data_);
}

std::uint64_t Series::residue(std::int64_t n) const {
  check_index(n);
  if (const auto* w = std::get_if<WordData>(&data_)) return w->c[n];
  if (const auto* b = std::get_if<BitData>(&data_)) return get_bit(b->w, n) ? 1 : 0;
  throw RingMismatch("residue() requires a mod 2^k ring");
}

bool Series::coeff_is_zero(std::int64_t n) const {
  check_index(n);
  return std::visit(
      [&](const auto& d) -> bool {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, ExactData>) {
          return d.c[n] == 0;
        } else if constexpr (std::is_same_v<D, WordData>) {
          return d.c[n] == 0;
        } else {
          return !get_bit(d.w, n);
        }
      },
      data_);
}

std::vector<BigInt> Series::coeffs() const {
  std::vector<BigInt> out;
  out.reserve(static_cast<std::size_t>(trunc_ + 1));
  for (std::int64_t n = 0; n <= trunc_; ++n) out.push_back(coeff(n));
  return out;
}

std::int64_t Series::count_nonzero() const {
  return std::visit(
      [&](const auto& d) -> std::int64_t {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, BitData>) {
          std::int64_t k = 0;
          for (const auto w : d.w) k += std::popcount(w);
          return k;
        } else {
          return static_cast<std::int64_t>(std::count_if(d.c.begin(), d.c.end(), [](const auto& v) { return v != 0; }));
        }
      },
      data_);
}

Series Series::truncated(std::int64_t trunc) const {
  if (trunc > trunc_) {
    throw TruncationError("cannot extend a series truncated at " + std::to_string(trunc_) + " to " +
                          std::to_string(trunc));
  }
  if (trunc < 0) throw InvalidArgument("negative truncation");
  return std::visit(
      [&](const auto& d) -> Series {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, BitData>) {
          Words w(d.w.begin(), d.w.begin() + words_for(trunc + 1));
          mask_tail(w, trunc + 1);
          return Series(ring_, trunc, BitData{std::move(w)});
        } else {
          D out{decltype(d.c)(d.c.begin(), d.c.begin() + trunc + 1)};
          return Series(ring_, trunc, std::move(out));
        }
      },
      data_);
}

Series Series::reduced(Ring target) const {
  if (target == ring_) return *this;
  if (!target.is_exact() && (ring_.is_exact() || target.bits() <= ring_.bits())) {
    Series out(target, trunc_);
    const std::uint64_t mask = target.mask();
    if (const auto* e = std::get_if<ExactData>(&data_)) {
      if (target.is_mod2()) {
        auto& w = std::get<BitData>(out.data_).w;
        for (std::int64_t n = 0; n <= trunc_; ++n) {
          if (mpz_odd_p(e->c[n].get_mpz_t())) flip_bit(w, n);
        }
      } else {
        auto& c = std::get<WordData>(out.data_).c;
        for (std::int64_t n = 0; n <= trunc_; ++n) c[n] = to_word(e->c[n]) & mask;
      }
    } else {
      const auto& src = std::get<WordData>(data_).c;
      if (target.is_mod2()) {
        auto& w = std::get<BitData>(out.data_).w;
        for (std::int64_t n = 0; n <= trunc_; ++n) {
          if (src[n] & 1U) flip_bit(w, n);
        }
      } else {
        auto& c = std::get<WordData>(out.data_).c;
        for (std::int64_t n = 0; n <= trunc_; ++n) c[n] = src[n] & mask;
      }
    }
    return out;
  }
  throw RingMismatch("cannot reduce " + ring_.name() + " to " + target.name());
}

// ---------------------------------------------------------------------------
// Additive structure

namespace {

template <typename Op>
Series zip_with(const Series& x, const Series& y, const char* name, Op op) {
  require_same_ring(x, y, name);
  const std::int64_t t = std::min(x.trunc(), y.trunc());
  const Series a = x.truncated(t);
  const Series b = y.truncated(t);
  Series::Storage data = a.storage();
  std::visit(
      [&](auto& d) {
        using D = std::decay_t<decltype(d)>;
        const auto& e = std::get<D>(b.storage());
        if constexpr (std::is_same_v<D, Series::BitData>) {
          for (std::size_t i = 0; i < d.w.size(); ++i) d.w[i] ^= e.w[i];
        } else {
          for (std::size_t i = 0; i < d.c.size(); ++i) op(d.c[i], e.c[i]);
          if constexpr (std::is_same_v<D, Series::WordData>) mask_words(d.c, x.ring().mask());
        }
      },
      data);
  return Series(x.ring(), t, std::move(data));
}

}  // namespace

Series add(const Series& x, const Series& y) {
  return zip_with(x, y, "add", [](auto& a, const auto& b) { a += b; });
}

Series sub(const Series& x, const Series& y) {
  return zip_with(x, y, "sub", [](auto& a, const auto& b) { a -= b; });
}

Series negate(const Series& x) { return scale(x, -1); }

Series scale(const Series& x, const BigInt& s) {
  Series::Storage data = x.storage();
  std::visit(
      [&](auto& d) {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, Series::ExactData>) {
          for (auto& v : d.c) v *= s;
        } else if constexpr (std::is_same_v<D, Series::WordData>) {
          const std::uint64_t w = to_word(s);
          for (auto& v : d.c) v = (v * w) & x.ring().mask();
        } else {
          if (!mpz_odd_p(s.get_mpz_t())) std::fill(d.w.begin(), d.w.end(), 0);
        }
      },
      data);
  return Series(x.ring(), x.trunc(), std::move(data));
}

Series shift(const Series& x, std::int64_t j) {
  if (j < 0) throw InvalidArgument("shift requires j >= 0");
  const std::int64_t t = checked_add(x.trunc(), j);
  Series out(x.ring(), t);
  Series::Storage data = out.storage();
  std::visit(
      [&](auto& d) {
        using D = std::decay_t<decltype(d)>;
        const auto& src = std::get<D>(x.storage());
        if constexpr (std::is_same_v<D, Series::BitData>) {
          xor_shifted(d.w, t + 1, src.w, j);
        } else {
          std::copy(src.c.begin(), src.c.end(), d.c.begin() + j);
        }
      },
      data);
  return Series(x.ring(), t, std::move(data));
}

// ---------------------------------------------------------------------------
// Multiplicative structure

Series mul(const Series& x, const Series& y) {
  require_same_ring(x, y, "mul");
  const std::int64_t t = std::min(x.trunc(), y.trunc());
  const bool x_sparser = x.truncated(t).count_nonzero() <= y.truncated(t).count_nonzero();
  const Series& sp = x_sparser ? x : y;
  const Series& dn = x_sparser ? y : x;
  Series out(x.ring(), t);
  Series::Storage data = out.storage();
  std::visit(
      [&](auto& d) {
        using D = std::decay_t<decltype(d)>;
        const auto& a = std::get<D>(sp.storage());
        const auto& b = std::get<D>(dn.storage());
        if constexpr (std::is_same_v<D, Series::BitData>) {
          for (const std::int64_t i : set_bits(a.w, t)) xor_shifted(d.w, t + 1, b.w, i);
        } else if constexpr (std::is_same_v<D, Series::WordData>) {
          for (std::int64_t i = 0; i <= t; ++i) {
            const std::uint64_t ai = a.c[i];
            if (ai == 0) continue;
            std::uint64_t* dst = d.c.data() + i;
            const std::uint64_t* src = b.c.data();
            const std::int64_t len = t - i + 1;
            for (std::int64_t j = 0; j < len; ++j) dst[j] += ai * src[j];
          }
          mask_words(d.c, x.ring().mask());
        } else {
          for (std::int64_t i = 0; i <= t; ++i) {
            const BigInt& ai = a.c[i];
            if (ai == 0) continue;
            for (std::int64_t j = 0; j + i <= t; ++j) {
              mpz_addmul(d.c[i + j].get_mpz_t(), ai.get_mpz_t(), b.c[j].get_mpz_t());
            }
          }
        }
      },
      data);
  return Series(x.ring(), t, std::move(data));
}

Series divide(const Series& x, const Series& y) {
  require_same_ring(x, y, "divide");
  const std::int64_t t = std::min(x.trunc(), y.trunc());
  Series::Storage data = x.truncated(t).storage();
  std::visit(
      [&](auto& d) {
        using D = std::decay_t<decltype(d)>;
        const auto& b = std::get<D>(y.storage());
        if constexpr (std::is_same_v<D, Series::BitData>) {
          if (!get_bit(b.w, 0)) throw NonUnit("divide: constant term is not a unit mod 2");
          auto taps = set_bits(b.w, t);
          taps.erase(taps.begin());
          bits_divide_inplace(d.w, t + 1, taps);
        } else if constexpr (std::is_same_v<D, Series::WordData>) {
          if ((b.c[0] & 1U) == 0) throw NonUnit("divide: constant term is even");
          auto taps = nonzero_taps(b.c, t);
          words_divide_inplace(d.c, inverse_word(b.c[0]), taps);
          mask_words(d.c, x.ring().mask());
        } else {
          if (b.c[0] != 1 && b.c[0] != -1) {
            throw NonUnit("divide: exact ring requires constant term +-1, got " + b.c[0].get_str());
          }
          auto taps = nonzero_taps(b.c, t);
          if (b.c[0] == -1) {
            for (auto& tp : taps) tp.second = -tp.second;
            for (auto& v : d.c) v = -v;
          }
          exact_divide_inplace(d.c, false, taps);
        }
      },
      data);
  return Series(x.ring(), t, std::move(data));
}

Series inverse(const Series& x) { return divide(Series::one(x.ring(), x.trunc()), x); }

Series mul_sparse(const Series& x, const SparseSeries& s) {
  const std::int64_t t = x.trunc();
  Series out(x.ring(), t);
  Series::Storage data = out.storage();
  std::visit(
      [&](auto& d) {
        using D = std::decay_t<decltype(d)>;
        const auto& src = std::get<D>(x.storage());
        for (const auto& term : s) {
          if (term.exponent > t) break;
          if constexpr (std::is_same_v<D, Series::BitData>) {
            if (term.coeff & 1) xor_shifted(d.w, t + 1, src.w, term.exponent);
          } else if constexpr (std::is_same_v<D, Series::WordData>) {
            const auto c = static_cast<std::uint64_t>(term.coeff);
            std::uint64_t* dst = d.c.data() + term.exponent;
            const std::int64_t len = t - term.exponent + 1;
            if (term.coeff == 1) {
              for (std::int64_t j = 0; j < len; ++j) dst[j] += src.c[j];
            } else if (term.coeff == -1) {
              for (std::int64_t j = 0; j < len; ++j) dst[j] -= src.c[j];
            } else {
              for (std::int64_t j = 0; j < len; ++j) dst[j] += c * src.c[j];
            }
          } else {
            for (std::int64_t j = 0; j + term.exponent <= t; ++j) {
              BigInt& v = d.c[j + term.exponent];
              if (term.coeff == 1) {
                v += src.c[j];
              } else if (term.coeff == -1) {
                v -= src.c[j];
              } else {
                v += BigInt(static_cast<long>(term.coeff)) * src.c[j];
              }
            }
          }
        }
        if constexpr (std::is_same_v<D, Series::WordData>) mask_words(d.c, x.ring().mask());
      },
      data);
  return Series(x.ring(), t, std::move(data));
}

Series div_sparse(const Series& x, const SparseSeries& s) {
  if (s.empty() || s.front().exponent != 0) throw NonUnit("div_sparse: missing constant term");
  const std::int64_t t = x.trunc();
  const std::int64_t c0 = s.front().coeff;
  Series::Storage data = x.storage();
  std::visit(
      [&](auto& d) {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, Series::BitData>) {
          if ((c0 & 1) == 0) throw NonUnit("div_sparse: constant term is even");
          std::vector<std::int64_t> taps;
          for (std::size_t i = 1; i < s.size(); ++i) {
            if (s[i].coeff & 1) taps.push_back(s[i].exponent);
          }
          bits_divide_inplace(d.w, t + 1, taps);
        } else if constexpr (std::is_same_v<D, Series::WordData>) {
          if ((c0 & 1) == 0) throw NonUnit("div_sparse: constant term is even");
          std::vector<std::pair<std::int64_t, std::uint64_t>> taps;
          for (std::size_t i = 1; i < s.size(); ++i) {
            taps.emplace_back(s[i].exponent, static_cast<std::uint64_t>(s[i].coeff));
          }
          words_divide_inplace(d.c, inverse_word(static_cast<std::uint64_t>(c0)), taps);
          mask_words(d.c, x.ring().mask());
        } else {
          if (c0 != 1 && c0 != -1) throw NonUnit("div_sparse: exact ring requires constant term +-1");
          std::vector<std::pair<std::int64_t, BigInt>> taps;
          for (std::size_t i = 1; i < s.size(); ++i) {
            taps.emplace_back(s[i].exponent, BigInt(static_cast<long>(s[i].coeff * c0)));
          }
          if (c0 == -1) {
            for (auto& v : d.c) v = -v;
          }
          exact_divide_inplace(d.c, false, taps);
        }
      },
      data);
  return Series(x.ring(), t, std::move(data));
}

Series eta_factor(std::int64_t delta, std::int64_t r, std::int64_t trunc, Ring ring) {
  if (delta < 1) throw InvalidArgument("eta_factor requires delta >= 1");
  return eta_product({{delta, r}}, trunc, ring);
}

Series eta_product(const std::map<std::int64_t, std::int64_t>& exponents, std::int64_t trunc,
                   Ring ring) {
  std::map<std::int64_t, std::int64_t> effective;
  for (const auto& [delta, r] : exponents) {
    if (delta < 1) throw InvalidArgument("eta exponent keys must be >= 1");
    if (r == 0) continue;
    if (ring.is_mod2()) {
      // f_d^2 = f_{2d} over Z/2, so |r| splits along its binary digits.
      std::int64_t mag = r < 0 ? -r : r;
      for (std::int64_t d = delta; mag != 0; mag >>= 1) {
        if (mag & 1) effective[d] += r < 0 ? -1 : 1;
        if (mag > 1) d = checked_mul(d, 2);
      }
    } else {
      effective[delta] += r;
    }
  }
  Series acc = Series::one(ring, trunc);
  for (const auto& [delta, r] : effective) {
    if (r <= 0 || delta > trunc) continue;
    const SparseSeries terms = pentagonal_terms(delta, trunc);
    for (std::int64_t i = 0; i < r; ++i) acc = mul_sparse(acc, terms);
  }
  for (const auto& [delta, r] : effective) {
    if (r >= 0 || delta > trunc) continue;
    const SparseSeries terms = pentagonal_terms(delta, trunc);
    for (std::int64_t i = 0; i < -r; ++i) acc = div_sparse(acc, terms);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Dissection, inflation, theta series

Series dissect(const Series& x, std::int64_t d, std::int64_t rclass) {
  if (d < 1) throw InvalidArgument("dissect requires d >= 1");
  if (rclass < 0 || rclass >= d) throw InvalidArgument("dissect requires 0 <= r < d");
  if (rclass > x.trunc()) {
    throw TruncationError("dissect: residue class " + std::to_string(rclass) +
                          " lies beyond truncation " + std::to_string(x.trunc()));
  }
  const std::int64_t t = (x.trunc() - rclass) / d;
  Series out(x.ring(), t);
  Series::Storage data = out.storage();
  std::visit(
      [&](auto& o) {
        using D = std::decay_t<decltype(o)>;
        const auto& src = std::get<D>(x.storage());
        for (std::int64_t n = 0; n <= t; ++n) {
          const std::int64_t i = d * n + rclass;
          if constexpr (std::is_same_v<D, Series::BitData>) {
            if (get_bit(src.w, i)) flip_bit(o.w, n);
          } else {
            o.c[n] = src.c[i];
          }
        }
      },
      data);
  return Series(x.ring(), t, std::move(data));
}

Series inflate(const Series& x, std::int64_t d, std::int64_t cap) {
  if (d < 1) throw InvalidArgument("inflate requires d >= 1");
  std::int64_t t = checked_mul(x.trunc(), d);
  if (cap >= 0) t = std::min(t, cap);
  Series out(x.ring(), t);
  Series::Storage data = out.storage();
  std::visit(
      [&](auto& o) {
        using D = std::decay_t<decltype(o)>;
        const auto& src = std::get<D>(x.storage());
        for (std::int64_t n = 0; n * d <= t; ++n) {
          if constexpr (std::is_same_v<D, Series::BitData>) {
            if (get_bit(src.w, n)) flip_bit(o.w, n * d);
          } else {
            o.c[n * d] = src.c[n];
          }
        }
      },
      data);
  return Series(x.ring(), t, std::move(data));
}

Series theta_series(const QuadraticForm& form, ThetaRange range, std::int64_t trunc, Ring ring) {
  if (form.a <= 0) throw InvalidArgument("quadratic form requires a > 0");
  if (trunc < 0) throw InvalidArgument("negative truncation");
  std::vector<std::int64_t> count(static_cast<std::size_t>(trunc + 1), 0);
  auto value = [&](std::int64_t n) -> __int128 {
    return static_cast<__int128>(form.a) * n * n + static_cast<__int128>(form.b) * n + form.c;
  };
  // r is increasing for n >= vertex and decreasing below it.
  const std::int64_t vertex = -form.b / (2 * form.a);
  const std::int64_t lo_limit = range == ThetaRange::PositiveOnly ? 1 : INT64_MIN;
  auto record = [&](std::int64_t n) {
    const __int128 e = value(n);
    if (e >= 0 && e <= trunc) ++count[static_cast<std::size_t>(e)];
  };
  for (std::int64_t n = std::max(vertex, lo_limit); value(n) <= trunc || n <= vertex + 1; ++n) record(n);
  for (std::int64_t n = std::max(vertex, lo_limit) - 1; n >= lo_limit && (value(n) <= trunc || n >= vertex - 1); --n) {
    record(n);
  }
  std::vector<BigInt> big;
  big.reserve(count.size());
  for (const auto c : count) big.emplace_back(static_cast<long>(c));
  return Series::from_coeffs(ring, big);
}

Comparison compare(const Series& x, const Series& y) {
  require_same_ring(x, y, "compare");
  Comparison cmp;
  cmp.compared_to = std::min(x.trunc(), y.trunc());
  cmp.trunc_differs = x.trunc() != y.trunc();
  if (x.ring().is_mod2()) {
    const auto& a = bits_of(x).w;
    const auto& b = bits_of(y).w;
    const std::int64_t nbits = cmp.compared_to + 1;
    for (std::int64_t i = 0; i < words_for(nbits); ++i) {
      std::uint64_t diff = a[i] ^ b[i];
      if (i == words_for(nbits) - 1 && (nbits & 63)) diff &= (std::uint64_t{1} << (nbits & 63)) - 1;
      if (diff != 0) {
        cmp.equal = false;
        cmp.first_mismatch = i * 64 + std::countr_zero(diff);
        return cmp;
      }
    }
    return cmp;
  }
  for (std::int64_t n = 0; n <= cmp.compared_to; ++n) {
    const bool same = x.ring().is_exact() ? exact_of(x).c[n] == exact_of(y).c[n]
                                          : words_of(x).c[n] == words_of(y).c[n];
    if (!same) {
      cmp.equal = false;
      cmp.first_mismatch = n;
      return cmp;
    }
  }
  return cmp;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const Series& x) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (std::int64_t n = 0; n <= x.trunc(); ++n) {
    if (x.ring().is_exact()) {
      const BigInt& c = exact_of(x).c[n];
      if (mpz_fits_slong_p(c.get_mpz_t())) {
        coeffs.push_back(static_cast<std::int64_t>(mpz_get_si(c.get_mpz_t())));
      } else {
        coeffs.push_back(c.get_str());
      }
    } else {
      coeffs.push_back(x.residue(n));
    }
  }
  return {{"ring", x.ring().name()}, {"trunc", x.trunc()}, {"coeffs", std::move(coeffs)}};
}

Series series_from_json(const nlohmann::json& j) {
  try {
    const Ring ring = Ring::parse(j.at("ring").get<std::string>());
    const auto trunc = j.at("trunc").get<std::int64_t>();
    const auto& arr = j.at("coeffs");
    if (!arr.is_array() || static_cast<std::int64_t>(arr.size()) != trunc + 1) {
      throw InvalidArgument("series JSON: coeffs must hold trunc+1 entries");
    }
    std::vector<BigInt> coeffs;
    coeffs.reserve(arr.size());
    for (const auto& v : arr) {
      BigInt c;
      if (v.is_string()) {
        if (c.set_str(v.get<std::string>(), 10) != 0) throw InvalidArgument("series JSON: bad integer string");
      } else if (v.is_number_unsigned()) {
        c = BigInt(static_cast<unsigned long>(v.get<std::uint64_t>()));
      } else if (v.is_number_integer()) {
        c = BigInt(static_cast<long>(v.get<std::int64_t>()));
      } else {
        throw InvalidArgument("series JSON: coefficients must be integers");
      }
      if (!ring.is_exact() && (c < 0 || c >= ring.modulus())) {
        throw InvalidArgument("series JSON: residue out of range for " + ring.name());
      }
      coeffs.push_back(std::move(c));
    }
    return Series::from_coeffs(ring, coeffs);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("series JSON: ") + e.what());
  }
}

}  // namespace lreg
