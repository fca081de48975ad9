#include "boxcert/twirl.hpp"

#include "boxcert/chsh.hpp"

namespace boxcert {

Box apply_relabeling(const RelabelingOp& op, const Box& box) {
  require_2x2(box);
  std::vector<Rational> out(16);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const int x2 = x ^ op.delta;
          const int y2 = y ^ op.gamma;
          const int a2 = a ^ (op.gamma & x) ^ (op.delta & op.gamma) ^ op.theta ^ (op.s & op.gamma);
          const int b2 = b ^ (op.delta & y) ^ op.theta ^ (op.r & op.delta);
          const int o[] = {a, b};
          const int i[] = {x, y};
          out[static_cast<std::size_t>((x2 * 2 + y2) * 4 + a2 * 2 + b2)] = box.at(o, i);
        }
  return Box(box.shape(), std::move(out));
}

Box shift_to_line(const Box& box, int r, int s, int t) {
  require_2x2(box);
  std::vector<Rational> out(16);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const int a2 = a ^ (r & x) ^ t;
          const int b2 = b ^ (s & y);
          out[static_cast<std::size_t>((x * 2 + y) * 4 + a2 * 2 + b2)] = box[static_cast<std::size_t>((x * 2 + y) * 4 + a * 2 + b)];
        }
  return Box(box.shape(), std::move(out));
}

std::vector<RelabelingOp> all_relabelings() {
  std::vector<RelabelingOp> ops;
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s)
      for (int d = 0; d < 2; ++d)
        for (int g = 0; g < 2; ++g)
          for (int th = 0; th < 2; ++th) ops.push_back(RelabelingOp{d, g, th, r, s});
  return ops;
}

std::array<RelabelingOp, 8> TwirlChannel::members() const {
  std::array<RelabelingOp, 8> ops;
  for (int k = 0; k < 8; ++k) ops[static_cast<std::size_t>(k)] = RelabelingOp{(k >> 2) & 1, (k >> 1) & 1, k & 1, r, s};
  return ops;
}

Box twirl(const Box& box, int r, int s) {
  return RelabelingMixture::twirl(r, s).apply(box);
}

std::optional<Rational> line_decomposition(const Box& box, int r, int s) {
  require_2x2(box);
  const Box top = pr_box(r, s, 0);
  const Box bottom = pr_box(r, s, 1);
  // The two PR boxes have disjoint supports, so p is read off any entry where
  // top is nonzero: box = p*(1/2) there.
  std::optional<Rational> p;
  for (std::size_t i = 0; i < 16; ++i) {
    if (!top[i].is_zero()) {
      p = box[i] * Rational(2);
      break;
    }
  }
  if (!p || *p > Rational(1)) return std::nullopt;
  if (mix(*p, top, bottom) != box) return std::nullopt;
  return p;
}

RelabelingMixture RelabelingMixture::single(const RelabelingOp& op) { return {{Rational(1)}, {op}}; }

RelabelingMixture RelabelingMixture::twirl(int r, int s) {
  const auto m = TwirlChannel{r, s}.members();
  return {std::vector<Rational>(8, Rational(1, 8)), std::vector<RelabelingOp>(m.begin(), m.end())};
}

Box RelabelingMixture::apply(const Box& box) const {
  std::vector<Box> images;
  images.reserve(ops.size());
  for (const auto& op : ops) images.push_back(apply_relabeling(op, box));
  return convex_combination(weights, images);
}

}  // namespace boxcert
