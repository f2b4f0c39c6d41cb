// Walks through a sensitive Frobenius LCA over Z_49: speeds, the fastest
// right-moving part U(X), its corner entries, and the decision with the
// power census that backs it.
//
//   ./build/samples/monex_walkthrough

#include <iostream>

#include "hoca/hoca.hpp"

int main() {
  using namespace hoca;
  const std::int64_t m = 49;
  const FrobeniusSpec f(m, {LaurentPoly(m, {{-2, 1}, {0, 1}, {1, 1}, {6, 16}}),
                            LaurentPoly(m, {{-3, 13}, {0, 3}, {2, 1}}),
                            LaurentPoly(m, {{-1, 34}, {3, 8}}),
                            LaurentPoly(m, {{-1, 1}, {0, 31}})});

  std::cout << "M(X) =\n" << frobenius_to_matrix(f).to_string() << '\n';

  const SpeedTable s = speed_table(f, 7);
  for (std::size_t i = 0; i < f.n(); ++i) {
    std::cout << "d_" << i << "+ = " << s.plus[i].to_string() << "   d_" << i << "- = " << s.minus[i].to_string()
              << '\n';
  }
  std::cout << "d+ = " << s.d_plus.to_string() << ", d- = " << s.d_minus.to_string() << "\n\n";

  const UpperLower ul = extract_UL(f, 7);
  std::cout << "U(X) =\n" << frobenius_to_matrix(ul.upper).to_string() << '\n';

  const auto corner = corner_sequence(ul.upper, 8);
  for (std::size_t t = 1; t <= 8; ++t) {
    std::cout << "t=" << t << "  U^t[4][4] = " << corner[t].to_string()
              << "   t*d+ = " << Fraction(static_cast<std::int64_t>(t) * s.d_plus.num(), s.d_plus.den()).to_string()
              << '\n';
  }

  const SensitivityVerdict v = decide_sensitivity(f);
  const auto& w = v.factors.front().witness;
  std::cout << "\nsensitive: " << std::boolalpha << v.sensitive;
  if (w) std::cout << " (row " << w->row_index << ", " << w->monomial.coefficient << "X^" << w->monomial.exponent << ")";
  std::cout << '\n';

  const PowerCensus c = power_census(frobenius_to_matrix(f));
  std::cout << "power census: " << to_string(c.outcome) << " after " << c.powers_examined << " powers, reach "
            << c.reaches.back().reach << '\n';
  return 0;
}
