#include "zfactor.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

#include "turrittin/error.hpp"

namespace turrittin::detail {

namespace {

using MP = std::vector<std::int64_t>;

void ztrim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int zdeg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ztrim(r);
  return r;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  ztrim(a);
  return a;
}

mpz_class zcontent(const ZPoly& f) {
  mpz_class g = 0;
  for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly zprimitive(ZPoly f) {
  ztrim(f);
  if (f.empty()) return f;
  mpz_class g = zcontent(f);
  if (f.back() < 0) g = -g;
  for (auto& c : f) c /= g;
  return f;
}

// Exact division in Z[x]; returns false if g does not divide f.
bool zdivide(const ZPoly& f, const ZPoly& g, ZPoly* quot) {
  ZPoly r = f;
  int dg = zdeg(g);
  if (zdeg(r) < dg) return r.empty();
  ZPoly q(zdeg(r) - dg + 1, 0);
  for (int i = zdeg(r); i >= dg; --i) {
    if (r[i] == 0) continue;
    if (!mpz_divisible_p(r[i].get_mpz_t(), g.back().get_mpz_t())) return false;
    mpz_class t = r[i] / g.back();
    q[i - dg] = t;
    for (int j = 0; j <= dg; ++j) r[i - dg + j] -= t * g[j];
  }
  ztrim(r);
  if (!r.empty()) return false;
  if (quot) {
    ztrim(q);
    *quot = q;
  }
  return true;
}

// ---- arithmetic in F_p[x] ----

struct Fp {
  std::int64_t p;

  std::int64_t norm(std::int64_t a) const {
    a %= p;
    return a < 0 ? a + p : a;
  }
  std::int64_t inv(std::int64_t a) const {
    std::int64_t r = 1, b = norm(a), e = p - 2;
    while (e > 0) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  }
  static void trim(MP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }
  MP from_z(const ZPoly& f) const {
    MP r(f.size());
    mpz_class pp = p;
    for (size_t i = 0; i < f.size(); ++i) {
      mpz_class t;
      mpz_fdiv_r(t.get_mpz_t(), f[i].get_mpz_t(), pp.get_mpz_t());
      r[i] = t.get_si();
    }
    trim(r);
    return r;
  }
  MP add(MP a, const MP& b) const {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % p;
    trim(a);
    return a;
  }
  MP sub(MP a, const MP& b) const {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = norm(a[i] - b[i]);
    trim(a);
    return a;
  }
  MP mul(const MP& a, const MP& b) const {
    if (a.empty() || b.empty()) return {};
    MP r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return r;
  }
  void divmod(const MP& a, const MP& b, MP* q, MP* r) const {
    MP rr = a;
    int db = static_cast<int>(b.size()) - 1;
    int da = static_cast<int>(a.size()) - 1;
    MP qq(std::max(da - db + 1, 0), 0);
    std::int64_t li = inv(b.back());
    for (int i = da; i >= db; --i) {
      if (rr[i] == 0) continue;
      std::int64_t t = rr[i] * li % p;
      qq[i - db] = t;
      for (int j = 0; j <= db; ++j) rr[i - db + j] = norm(rr[i - db + j] - t * b[j]);
    }
    trim(rr);
    trim(qq);
    if (q) *q = qq;
    if (r) *r = rr;
  }
  MP rem(const MP& a, const MP& b) const {
    MP r;
    divmod(a, b, nullptr, &r);
    return r;
  }
  MP quo(const MP& a, const MP& b) const {
    MP q;
    divmod(a, b, &q, nullptr);
    return q;
  }
  MP monic(MP a) const {
    if (a.empty()) return a;
    std::int64_t li = inv(a.back());
    for (auto& c : a) c = c * li % p;
    return a;
  }
  MP gcd(MP a, MP b) const {
    while (!b.empty()) {
      MP r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  // s*a + t*b = 1 for coprime a, b.
  void xgcd(const MP& a, const MP& b, MP* s, MP* t) const {
    MP r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
      MP q, r;
      divmod(r0, r1, &q, &r);
      MP s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (r0.size() != 1) throw Error(ErrorCode::Internal, "Hensel factors not coprime mod p");
    std::int64_t li = inv(r0[0]);
    for (auto& c : s0) c = c * li % p;
    for (auto& c : t0) c = c * li % p;
    *s = s0;
    *t = t0;
  }
  MP powmod(MP base, mpz_class e, const MP& f) const {
    MP r{1};
    base = rem(base, f);
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = rem(mul(r, base), f);
      e >>= 1;
      if (e > 0) base = rem(mul(base, base), f);
    }
    return r;
  }
  MP deriv(const MP& f) const {
    MP r;
    for (size_t i = 1; i < f.size(); ++i) r.push_back(norm(f[i] * static_cast<std::int64_t>(i)));
    trim(r);
    return r;
  }
};

// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<MP, int>> ddf(const Fp& F, MP f) {
  std::vector<std::pair<MP, int>> out;
  MP x{0, 1};
  MP h = x;
  for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
    h = F.powmod(h, F.p, f);
    MP g = F.gcd(F.sub(h, x), f);
    if (g.size() > 1) {
      out.push_back({g, d});
      f = F.quo(f, g);
      h = F.rem(h, f);
    }
  }
  if (f.size() > 1) out.push_back({f, static_cast<int>(f.size()) - 1});
  return out;
}

void edf(const Fp& F, const MP& g, int d, std::mt19937_64& rng, std::vector<MP>& out) {
  int n = static_cast<int>(g.size()) - 1;
  if (n == d) {
    out.push_back(g);
    return;
  }
  mpz_class pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(F.p), static_cast<unsigned long>(d));
  mpz_class e = (pd - 1) / 2;
  std::uniform_int_distribution<std::int64_t> dist(0, F.p - 1);
  for (;;) {
    MP a(n);
    for (auto& c : a) c = dist(rng);
    Fp::trim(a);
    if (a.size() < 2) continue;
    MP b = F.powmod(a, e, g);
    MP h = F.gcd(F.sub(b, MP{1}), g);
    int dh = static_cast<int>(h.size()) - 1;
    if (dh > 0 && dh < n) {
      edf(F, h, d, rng, out);
      edf(F, F.quo(g, h), d, rng, out);
      return;
    }
  }
}

// Lifts f = lead * prod(factors) from mod p to mod p^k (k steps of linear lifting).
// The factors are monic; on return they are integer representatives mod p^k.
void hensel(const Fp& F, const ZPoly& f, std::vector<ZPoly>& factors, size_t lo, size_t hi, int k) {
  if (hi - lo <= 1) {
    if (hi - lo == 1) {
      // single factor: f itself up to the leading coefficient, made monic mod p^k
      mpz_class pk;
      mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(F.p), static_cast<unsigned long>(k));
      mpz_class li;
      mpz_class lc = f.back();
      if (mpz_invert(li.get_mpz_t(), lc.get_mpz_t(), pk.get_mpz_t()) == 0)
        throw Error(ErrorCode::Internal, "leading coefficient not invertible mod p^k");
      ZPoly g = f;
      for (auto& c : g) {
        c *= li;
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), pk.get_mpz_t());
      }
      factors[lo] = g;
    }
    return;
  }
  size_t mid = (lo + hi) / 2;
  MP gm{1}, hm{F.norm(mpz_class(f.back() % F.p).get_si())};
  for (size_t i = lo; i < mid; ++i) gm = F.mul(gm, F.from_z(factors[i]));
  for (size_t i = mid; i < hi; ++i) hm = F.mul(hm, F.from_z(factors[i]));
  MP s, t;
  F.xgcd(gm, hm, &s, &t);
  ZPoly g(gm.begin(), gm.end()), h(hm.begin(), hm.end());
  h.back() = f.back();
  mpz_class pk = F.p;
  for (int step = 1; step < k; ++step) {
    ZPoly diff = zsub(f, zmul(g, h));
    for (auto& c : diff) c /= pk;
    MP e = F.from_z(diff);
    MP dg = F.rem(F.mul(t, e), gm);
    MP dh = F.quo(F.sub(e, F.mul(hm, dg)), gm);
    for (size_t i = 0; i < dg.size(); ++i) g[i] += pk * dg[i];
    for (size_t i = 0; i < dh.size(); ++i) h[i] += pk * dh[i];
    pk *= F.p;
  }
  hensel(F, g, factors, lo, mid, k);
  hensel(F, h, factors, mid, hi, k);
}

std::vector<ZPoly> zassenhaus(const ZPoly& f) {
  int n = zdeg(f);
  if (n <= 1) return {f};
  const mpz_class& lc = f.back();
  static const int primes[] = {3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,
                               53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109,
                               113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
                               193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269,
                               271, 277, 281, 283, 293, 307, 311, 313, 317, 331, 337, 347, 349, 353,
                               359, 367, 373, 379, 383, 389, 397, 401, 409, 419, 421, 431, 433, 439};
  int best_p = 0;
  std::vector<std::pair<MP, int>> best_ddf;
  int best_count = n + 1;
  int tried = 0;
  for (int p : primes) {
    if (mpz_divisible_ui_p(lc.get_mpz_t(), static_cast<unsigned long>(p))) continue;
    Fp F{p};
    MP fm = F.monic(F.from_z(f));
    if (F.gcd(fm, F.deriv(fm)).size() > 1) continue;
    auto dd = ddf(F, fm);
    int count = 0;
    for (auto& [g, d] : dd) count += (static_cast<int>(g.size()) - 1) / d;
    if (count < best_count) {
      best_count = count;
      best_p = p;
      best_ddf = dd;
    }
    if (count == 1 || ++tried >= 5) break;
  }
  if (best_p == 0) throw Error(ErrorCode::Internal, "no suitable prime for modular factorization");
  if (best_count == 1) return {f};
  Fp F{best_p};
  std::mt19937_64 rng(0x7572726974746eULL);
  std::vector<MP> modf;
  for (auto& [g, d] : best_ddf) edf(F, g, d, rng, modf);

  // Coefficient bound for factors of lc * f.
  mpz_class norm1 = 0;
  for (const auto& c : f) norm1 += abs(c);
  mpz_class bound = abs(lc) * norm1;
  bound <<= n;
  bound = 2 * bound + 1;
  int k = 1;
  mpz_class pk = best_p;
  while (pk <= bound) {
    pk *= best_p;
    ++k;
  }
  std::vector<ZPoly> lifted;
  for (auto& m : modf) lifted.emplace_back(m.begin(), m.end());
  hensel(F, f, lifted, 0, lifted.size(), k);

  // Recombination over subsets of increasing size.
  std::vector<ZPoly> out;
  ZPoly rest = f;
  std::vector<bool> used(lifted.size(), false);
  mpz_class half = pk / 2;
  auto symmetric = [&](ZPoly g) {
    for (auto& c : g) {
      mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), pk.get_mpz_t());
      if (c > half) c -= pk;
    }
    ztrim(g);
    return g;
  };
  size_t remaining = lifted.size();
  for (size_t s = 1; 2 * s <= remaining; ++s) {
    bool restart = true;
    while (restart) {
      restart = false;
      std::vector<size_t> idx;
      for (size_t i = 0; i < lifted.size(); ++i)
        if (!used[i]) idx.push_back(i);
      if (2 * s > idx.size()) break;
      std::vector<bool> sel(idx.size(), false);
      std::fill(sel.begin(), sel.begin() + static_cast<long>(s), true);
      do {
        ZPoly g{rest.back()};
        for (size_t j = 0; j < idx.size(); ++j)
          if (sel[j]) g = symmetric(zmul(g, lifted[idx[j]]));
        g = zprimitive(g);
        ZPoly q;
        if (zdeg(g) > 0 && zdivide(rest, g, &q)) {
          out.push_back(g);
          rest = q;
          for (size_t j = 0; j < idx.size(); ++j)
            if (sel[j]) used[idx[j]] = true;
          remaining -= s;
          restart = true;
          break;
        }
      } while (std::prev_permutation(sel.begin(), sel.end()));
    }
  }
  if (zdeg(rest) > 0) out.push_back(zprimitive(rest));
  return out;
}

void divisors(mpz_class v, std::vector<mpz_class>& out, size_t cap) {
  v = abs(v);
  for (mpz_class d = 1; d * d <= v; ++d) {
    if (mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t())) {
      out.push_back(d);
      if (d * d != v) out.push_back(v / d);
    }
    if (out.size() > cap) return;
  }
}

}  // namespace

std::vector<ZPoly> factor_squarefree_z(const ZPoly& input) {
  ZPoly f = zprimitive(input);
  std::vector<ZPoly> out;
  if (zdeg(f) <= 0) return out;
  if (f[0] == 0) {
    out.push_back({0, 1});
    f.erase(f.begin());
  }
  // Cheap rational roots when the extreme coefficients are small.
  const mpz_class lim = 1000000;
  if (zdeg(f) >= 1 && abs(f[0]) <= lim && abs(f.back()) <= lim) {
    std::vector<mpz_class> num, den;
    divisors(f[0], num, 2000);
    divisors(f.back(), den, 2000);
    if (num.size() <= 2000 && den.size() <= 2000) {
      for (const auto& a : num) {
        for (const auto& b : den) {
          if (zdeg(f) < 1) break;
          if (gcd(a, b) != 1) continue;
          for (int sgn : {1, -1}) {
            ZPoly lin{-sgn * a, b};
            ZPoly q;
            while (zdeg(f) >= 1 && zdivide(f, lin, &q)) {
              out.push_back(zprimitive(lin));
              f = q;
            }
          }
        }
      }
    }
  }
  f = zprimitive(f);
  if (zdeg(f) >= 1) {
    auto rest = zdeg(f) <= 1 ? std::vector<ZPoly>{f} : zassenhaus(f);
    out.insert(out.end(), rest.begin(), rest.end());
  }
  return out;
}

}  // namespace turrittin::detail
