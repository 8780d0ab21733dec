#include "kplus/classical_forms.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

namespace kplus {

namespace {

mpz_class sigma(long n, unsigned power) {
  mpz_class s = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), power);
    s += t;
    long e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(e), power);
      s += t;
    }
  }
  return s;
}

QSeries eisenstein(int prec, unsigned power, long scale) {
  std::vector<mpz_class> c(static_cast<size_t>(prec));
  c[0] = 1;
  for (long n = 1; n < prec; ++n) c[n] = scale * sigma(n, power);
  return QSeries::from_integers(0, c);
}

/// Memo keyed on (form, prec); values are immutable once stored.
class SeriesMemo {
 public:
  template <class Make>
  QSeries get(int form, int prec, Make make) {
    {
      std::shared_lock lock(mu_);
      auto it = store_.lower_bound({form, prec});
      if (it != store_.end() && it->first.first == form) return it->second.truncated(prec);
    }
    QSeries s = make(prec);
    std::unique_lock lock(mu_);
    store_.emplace(std::make_pair(form, prec), s);
    return s;
  }

 private:
  std::shared_mutex mu_;
  std::map<std::pair<int, int>, QSeries> store_;
};

SeriesMemo& memo() {
  static SeriesMemo m;
  return m;
}

}  // namespace

QSeries theta_series(int prec) {
  if (prec < 1) throw std::invalid_argument("theta_series requires prec >= 1");
  std::vector<mpz_class> c(static_cast<size_t>(prec));
  c[0] = 1;
  for (long n = 1; n * n < prec; ++n) c[n * n] = 2;
  return QSeries::from_integers(0, c);
}

QSeries eis_F_series(int prec) {
  if (prec < 2) throw std::invalid_argument("eis_F_series requires prec >= 2");
  std::vector<mpz_class> c(static_cast<size_t>(prec));
  for (long n = 1; n < prec; n += 2) c[n] = sigma(n, 1);
  return QSeries::from_integers(0, c);
}

QSeries e4_series(int prec) { return eisenstein(prec, 3, 240); }

namespace detail {
QSeries e6_series(int prec) { return eisenstein(prec, 5, -504); }
}  // namespace detail

QSeries delta_series(int prec) {
  if (prec < 2) throw std::invalid_argument("delta_series requires prec >= 2");
  return memo().get(0, prec, [](int p) {
    int len = p - 1;
    std::vector<mpz_class> eta(static_cast<size_t>(len));
    eta[0] = 1;
    for (int n = 1; n < len; ++n) {
      for (int i = len - 1; i >= n; --i) eta[i] -= eta[i - n];
    }
    QSeries e24 = pow(QSeries::from_integers(0, eta), 24);
    std::vector<GaussianRational> v(e24.coefficients().begin(), e24.coefficients().end());
    return QSeries(1, std::move(v), p);
  });
}

QSeries delta4_series(int prec) { return substitute_power(delta_series((prec + 3) / 4), 4).truncated(prec); }

QSeries j_series(int prec) {
  return memo().get(1, prec, [](int p) {
    QSeries e4 = e4_series(p + 2);
    return (pow(e4, 3) * invert(delta_series(p + 2))).truncated(p);
  });
}

QSeries j4_series(int prec) {
  if (prec < 5) throw std::invalid_argument("j4_series requires prec >= 5");
  return substitute_power(j_series((prec + 3) / 4), 4).truncated(prec);
}

QSeries dj4_series(int prec) { return q_derivative(j4_series(prec)); }

std::string_view form_name(FormName f) {
  switch (f) {
    case FormName::Theta: return "theta";
    case FormName::EisF: return "F";
    case FormName::Delta4: return "delta4";
    case FormName::E4at4: return "e4at4";
    case FormName::J4: return "j4";
    case FormName::DJ4: return "dj4";
  }
  return "";
}

std::optional<FormName> parse_form_name(std::string_view s) {
  for (FormName f : {FormName::Theta, FormName::EisF, FormName::Delta4, FormName::E4at4, FormName::J4, FormName::DJ4}) {
    if (form_name(f) == s) return f;
  }
  return std::nullopt;
}

QSeries form_series(FormName f, int prec) {
  switch (f) {
    case FormName::Theta: return theta_series(prec);
    case FormName::EisF: return eis_F_series(prec);
    case FormName::Delta4: return delta4_series(prec);
    case FormName::E4at4: return substitute_power(e4_series((prec + 3) / 4), 4).truncated(prec);
    case FormName::J4: return j4_series(prec);
    case FormName::DJ4: return dj4_series(prec);
  }
  throw std::invalid_argument("unknown form");
}

HurwitzValue hurwitz_brute(long n) {
  if (n < 0) throw std::invalid_argument("hurwitz_brute requires n >= 0");
  if (n == 0) return {0, -1};
  long six_sum = 0;
  if (n % 4 == 1 || n % 4 == 2) return {n, 0};
  for (long A = 1; 3 * A * A <= n; ++A) {
    for (long B = -A; B <= A; ++B) {
      long num = B * B + n;
      if (num % (4 * A)) continue;
      long C = num / (4 * A);
      if (C < A) continue;
      if (B < 0 && (-B == A || A == C)) continue;
      if (B == 0 && A == C) six_sum += 3;
      else if (B == A && A == C) six_sum += 2;
      else six_sum += 6;
    }
  }
  return {n, 2 * six_sum};
}

long gauss_h(long n) {
  if (n < 0) throw std::invalid_argument("gauss_h requires n >= 0");
  if (n == 0) return 1;
  if (n % 4 == 0) return gauss_h(n / 4);
  if (n % 4 == 1 || n % 4 == 2) return hurwitz_brute(4 * n).twelveH;
  if (n % 8 == 3) return 2 * hurwitz_brute(n).twelveH;
  return 0;
}

}  // namespace kplus
