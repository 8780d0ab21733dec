#pragma once

#include "kplus/qseries.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace kplus {

enum class FormName { Theta, EisF, Delta4, E4at4, J4, DJ4 };

std::string_view form_name(FormName f);
std::optional<FormName> parse_form_name(std::string_view s);
QSeries form_series(FormName f, int prec);

QSeries theta_series(int prec);
/// F = sum sigma(2n+1) q^(2n+1).
QSeries eis_F_series(int prec);
QSeries e4_series(int prec);
QSeries delta_series(int prec);
QSeries delta4_series(int prec);
/// j = E4^3 / Delta at level one.
QSeries j_series(int prec);
QSeries j4_series(int prec);
QSeries dj4_series(int prec);

namespace detail {
QSeries e6_series(int prec);
}

struct HurwitzValue {
  long n = 0;
  long twelveH = 0;
};

/// 12 H(n) by enumerating reduced forms of discriminant -n.
HurwitzValue hurwitz_brute(long n);
/// Coefficient of q^n in theta^3 by Gauss's rule.
long gauss_h(long n);

}  // namespace kplus
