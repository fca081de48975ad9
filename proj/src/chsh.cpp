#include "boxcert/chsh.hpp"

namespace boxcert {

void require_2x2(const Box& box) {
  if (!box.is_binary(2)) throw WrongShape("operation needs a 2-party box with binary inputs and outputs");
}

Rational correlator(const Box& box, int i, int j) {
  require_2x2(box);
  Rational c;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const int out[] = {a, b};
      const int in[] = {i, j};
      const Rational& p = box.at(out, in);
      if (a == b) c += p;
      else c -= p;
    }
  return c;
}

Rational beta(const Box& box, int r, int s, int t) {
  auto sign = [](int e) { return (e & 1) ? Rational(-1) : Rational(1); };
  return sign(t) * correlator(box, 0, 0) + sign(s + t) * correlator(box, 0, 1) +
         sign(r + t) * correlator(box, 1, 0) + sign(r + s + t + 1) * correlator(box, 1, 1);
}

BetaTable beta_table(const Box& box) {
  require_2x2(box);
  BetaTable tab;
  tab.local = true;
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t) {
        auto& v = tab.values[static_cast<std::size_t>(4 * r + 2 * s + t)];
        v = CHSHValue{r, s, t, beta(box, r, s, t)};
        if (abs(v.value) > Rational(2)) tab.local = false;
      }
  return tab;
}

CHSHValue max_beta(const Box& box) {
  const auto tab = beta_table(box);
  CHSHValue best = tab.values[0];
  for (const auto& v : tab.values)
    if (v.value > best.value) best = v;
  return best;
}

}  // namespace boxcert
