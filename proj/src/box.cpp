#include "boxcert/box.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace boxcert {

namespace {

std::string tuple_str(std::span<const int> t) {
  std::string s;
  for (int v : t) s += std::to_string(v);
  return s;
}

std::size_t product(std::span<const int> v) {
  std::size_t n = 1;
  for (int k : v) n *= static_cast<std::size_t>(k);
  return n;
}

std::vector<int> pick(std::span<const int> values, std::span<const int> parties) {
  std::vector<int> out;
  out.reserve(parties.size());
  for (int p : parties) out.push_back(values[static_cast<std::size_t>(p)]);
  return out;
}

// Marginal table of the parties in `keep` for every full input tuple:
// result[x_full][a_keep].
std::vector<std::vector<Rational>> marginals_per_input(const Box& box, std::span<const int> keep) {
  const Shape& sh = box.shape();
  const auto keep_out = pick(sh.outputs, keep);
  const std::size_t nx = sh.input_tuples();
  const std::size_t na = sh.output_tuples();
  std::vector<std::vector<Rational>> res(nx, std::vector<Rational>(product(keep_out)));
  for (std::size_t a = 0; a < na; ++a) {
    const auto a_keep = pick(tuple_at(a, sh.outputs), keep);
    const std::size_t k = tuple_index(a_keep, keep_out);
    for (std::size_t x = 0; x < nx; ++x) res[x][k] += box[x * na + a];
  }
  return res;
}

// Receiver parties' marginal must not depend on the sender parties' inputs.
void check_direction(const Box& box, const Cut& cut, SignalDirection dir,
                     std::vector<NSViolation>& out) {
  const Shape& sh = box.shape();
  const auto& receiver_set = dir == SignalDirection::RightToLeft ? cut.left : cut.right;
  const auto& sender_set = dir == SignalDirection::RightToLeft ? cut.right : cut.left;
  const std::vector<int> receivers(receiver_set.begin(), receiver_set.end());
  const std::vector<int> senders(sender_set.begin(), sender_set.end());

  const auto table = marginals_per_input(box, receivers);
  const auto recv_out = pick(sh.outputs, receivers);
  for (std::size_t x = 0; x < sh.input_tuples(); ++x) {
    auto full = tuple_at(x, sh.inputs);
    auto reference = full;
    for (int p : senders) reference[static_cast<std::size_t>(p)] = 0;
    const std::size_t xr = tuple_index(reference, sh.inputs);
    if (xr == x) continue;
    for (std::size_t a = 0; a < table[x].size(); ++a) {
      if (table[x][a] == table[xr][a]) continue;
      out.push_back(NSViolation{cut, dir, tuple_at(a, recv_out), pick(full, receivers),
                                pick(reference, senders), pick(full, senders),
                                table[x][a] - table[xr][a]});
    }
  }
}

}  // namespace

NotNormalized::NotNormalized(std::vector<int> input_tuple, Rational actual_sum)
    : Error("probabilities for input " + tuple_str(input_tuple) + " sum to " + actual_sum.str()),
      input_tuple_(std::move(input_tuple)),
      actual_sum_(std::move(actual_sum)) {}

std::size_t Shape::input_tuples() const { return product(inputs); }
std::size_t Shape::output_tuples() const { return product(outputs); }

Shape Shape::binary(std::size_t parties) {
  return Shape{std::vector<int>(parties, 2), std::vector<int>(parties, 2)};
}

std::size_t tuple_index(std::span<const int> tuple, std::span<const int> arity) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    idx = idx * static_cast<std::size_t>(arity[i]) + static_cast<std::size_t>(tuple[i]);
  }
  return idx;
}

Tuple tuple_at(std::size_t index, std::span<const int> arity) {
  Tuple t(arity.size());
  for (std::size_t i = arity.size(); i-- > 0;) {
    const auto k = static_cast<std::size_t>(arity[i]);
    t[i] = static_cast<int>(index % k);
    index /= k;
  }
  return t;
}

Box::Box(Shape shape, std::vector<Rational> probs) : shape_(std::move(shape)), probs_(std::move(probs)) {
  if (shape_.parties() == 0 || shape_.outputs.size() != shape_.inputs.size()) {
    throw ShapeMismatch("box needs at least one party and matching arity lists");
  }
  for (std::size_t i = 0; i < shape_.parties(); ++i) {
    if (shape_.inputs[i] < 1 || shape_.outputs[i] < 1) throw ShapeMismatch("arities must be positive");
  }
  if (probs_.size() != shape_.entries()) {
    throw ShapeMismatch("expected " + std::to_string(shape_.entries()) + " entries, got " +
                        std::to_string(probs_.size()));
  }
  const std::size_t na = shape_.output_tuples();
  for (std::size_t x = 0; x < shape_.input_tuples(); ++x) {
    Rational sum;
    for (std::size_t a = 0; a < na; ++a) {
      const Rational& p = probs_[x * na + a];
      if (p.sign() < 0) {
        throw NegativeEntry("negative entry " + p.str() + " at output " +
                            tuple_str(tuple_at(a, shape_.outputs)) + ", input " +
                            tuple_str(tuple_at(x, shape_.inputs)));
      }
      sum += p;
    }
    if (sum != Rational(1)) throw NotNormalized(tuple_at(x, shape_.inputs), sum);
  }
}

const Rational& Box::at(std::span<const int> outputs, std::span<const int> inputs) const {
  return probs_[tuple_index(inputs, shape_.inputs) * shape_.output_tuples() +
                tuple_index(outputs, shape_.outputs)];
}

bool Box::is_binary(std::size_t parties) const { return shape_ == Shape::binary(parties); }

Box make_box(const Shape& shape, std::vector<Rational> entries) { return Box(shape, std::move(entries)); }

Box pr_box(int r, int s, int t) {
  std::vector<Rational> p(16);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const int rhs = (x & y) ^ (r & x) ^ (s & y) ^ t;
          p[static_cast<std::size_t>((x * 2 + y) * 4 + a * 2 + b)] = ((a ^ b) == rhs) ? Rational(1, 2) : Rational(0);
        }
  return Box(Shape::binary(2), std::move(p));
}

std::vector<Box> deterministic_vertices() {
  // Truth table code c: f(0) = c >> 1, f(1) = c & 1.
  auto eval = [](int code, int in) { return in == 0 ? (code >> 1) & 1 : code & 1; };
  std::vector<Box> out;
  out.reserve(16);
  for (int f = 0; f < 4; ++f)
    for (int g = 0; g < 4; ++g) {
      std::vector<Rational> p(16);
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          const int a = eval(f, x);
          const int b = eval(g, y);
          p[static_cast<std::size_t>((x * 2 + y) * 4 + a * 2 + b)] = 1;
        }
      out.emplace_back(Shape::binary(2), std::move(p));
    }
  return out;
}

std::vector<Box> ns_vertices() {
  auto v = deterministic_vertices();
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t) v.push_back(pr_box(r, s, t));
  return v;
}

std::vector<std::string> ns_vertex_names() {
  static const char* fn[] = {"0", "x", "!x", "1"};  // truth-table codes 00, 01, 10, 11
  std::vector<std::string> names;
  for (int f = 0; f < 4; ++f)
    for (int g = 0; g < 4; ++g) {
      std::string gf = fn[g];
      if (gf == "x") gf = "y";
      if (gf == "!x") gf = "!y";
      names.push_back(std::string("D[a=") + fn[f] + ",b=" + gf + "]");
    }
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t)
        names.push_back("B" + std::to_string(r) + std::to_string(s) + std::to_string(t));
  return names;
}

Box uniform_box(const Shape& shape) {
  const Rational p = Rational(1) / Rational(static_cast<long>(shape.output_tuples()));
  return Box(shape, std::vector<Rational>(shape.entries(), p));
}

Box mix(const Rational& p, const Box& a, const Box& b) {
  if (p < Rational(0) || p > Rational(1)) throw WeightOutOfRange("mixing weight " + p.str() + " outside [0,1]");
  if (a.shape() != b.shape()) throw ShapeMismatch("cannot mix boxes of different shapes");
  const Rational q = Rational(1) - p;
  std::vector<Rational> out(a.probs().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p * a[i] + q * b[i];
  return Box(a.shape(), std::move(out));
}

Box convex_combination(std::span<const Rational> weights, std::span<const Box> boxes) {
  if (weights.size() != boxes.size() || boxes.empty()) throw ShapeMismatch("weights and boxes differ in count");
  Rational total;
  for (const auto& w : weights) {
    if (w.sign() < 0) throw WeightOutOfRange("negative weight " + w.str());
    total += w;
  }
  if (total != Rational(1)) throw WeightOutOfRange("weights sum to " + total.str());
  std::vector<Rational> out(boxes[0].probs().size());
  for (std::size_t k = 0; k < boxes.size(); ++k) {
    if (boxes[k].shape() != boxes[0].shape()) throw ShapeMismatch("convex combination of mixed shapes");
    if (weights[k].is_zero()) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += weights[k] * boxes[k][i];
  }
  return Box(boxes[0].shape(), std::move(out));
}

Box b_alpha(const Rational& alpha) {
  if (alpha < Rational(0) || alpha > Rational(1)) throw WeightOutOfRange("alpha " + alpha.str() + " outside [0,1]");
  return mix(alpha, pr_box(0, 0, 0), pr_box(0, 0, 1));
}

Box tensor(const Box& a, const Box& b) {
  Shape sh = a.shape();
  sh.inputs.insert(sh.inputs.end(), b.shape().inputs.begin(), b.shape().inputs.end());
  sh.outputs.insert(sh.outputs.end(), b.shape().outputs.begin(), b.shape().outputs.end());
  const std::size_t nxa = a.shape().input_tuples(), nxb = b.shape().input_tuples();
  const std::size_t naa = a.shape().output_tuples(), nab = b.shape().output_tuples();
  std::vector<Rational> out(sh.entries());
  // With A's parties first, the combined index is the concatenation of digits.
  for (std::size_t xa = 0; xa < nxa; ++xa)
    for (std::size_t xb = 0; xb < nxb; ++xb)
      for (std::size_t aa = 0; aa < naa; ++aa) {
        const Rational& pa = a[xa * naa + aa];
        if (pa.is_zero()) continue;
        for (std::size_t ab = 0; ab < nab; ++ab) {
          out[(xa * nxb + xb) * (naa * nab) + aa * nab + ab] = pa * b[xb * nab + ab];
        }
      }
  return Box(std::move(sh), std::move(out));
}

Box permute_parties(const Box& box, std::span<const int> order) {
  const Shape& src = box.shape();
  if (order.size() != src.parties()) throw ShapeMismatch("permutation length differs from party count");
  std::vector<int> seen(order.size(), 0);
  for (int p : order) {
    if (p < 0 || static_cast<std::size_t>(p) >= order.size() || seen[static_cast<std::size_t>(p)]++) {
      throw ShapeMismatch("not a permutation of parties");
    }
  }
  Shape dst{pick(src.inputs, order), pick(src.outputs, order)};
  std::vector<Rational> out(src.entries());
  const std::size_t na = src.output_tuples();
  for (std::size_t x = 0; x < src.input_tuples(); ++x) {
    const std::size_t xd = tuple_index(pick(tuple_at(x, src.inputs), order), dst.inputs);
    for (std::size_t a = 0; a < na; ++a) {
      const std::size_t ad = tuple_index(pick(tuple_at(a, src.outputs), order), dst.outputs);
      out[xd * na + ad] = box[x * na + a];
    }
  }
  return Box(std::move(dst), std::move(out));
}

void Cut::validate(std::size_t parties) const {
  if (left.empty() || right.empty()) throw std::invalid_argument("cut sides must be nonempty");
  std::vector<int> seen(parties, 0);
  for (const auto* side : {&left, &right})
    for (int p : *side) {
      if (p < 0 || static_cast<std::size_t>(p) >= parties) throw std::invalid_argument("cut names unknown party");
      if (seen[static_cast<std::size_t>(p)]++) throw std::invalid_argument("cut sides overlap");
    }
  if (left.size() + right.size() != parties) throw std::invalid_argument("cut does not cover all parties");
}

std::string Cut::str() const {
  std::ostringstream os;
  auto side = [&](const std::set<int>& s) {
    bool first = true;
    for (int p : s) {
      os << (first ? "" : ",") << p;
      first = false;
    }
  };
  side(left);
  os << '|';
  side(right);
  return os.str();
}

NSReport is_ns_in_cut(const Box& box, const Cut& cut) {
  cut.validate(box.parties());
  NSReport rep;
  check_direction(box, cut, SignalDirection::RightToLeft, rep.violations);
  check_direction(box, cut, SignalDirection::LeftToRight, rep.violations);
  rep.fully_ns = rep.violations.empty();
  return rep;
}

NSReport is_fully_ns(const Box& box) {
  NSReport rep;
  const std::size_t n = box.parties();
  if (n < 2) return rep;
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
    Cut cut;
    for (std::size_t p = 0; p < n; ++p) ((mask >> p) & 1 ? cut.left : cut.right).insert(static_cast<int>(p));
    check_direction(box, cut, SignalDirection::RightToLeft, rep.violations);
  }
  rep.fully_ns = rep.violations.empty();
  return rep;
}

Box marginal(const Box& box, const std::set<int>& keep) {
  const std::size_t n = box.parties();
  Cut cut;
  for (std::size_t p = 0; p < n; ++p) (keep.count(static_cast<int>(p)) ? cut.left : cut.right).insert(static_cast<int>(p));
  if (cut.left.empty()) throw MarginalIllDefined("marginal must keep at least one party");
  if (cut.right.empty()) return box;
  cut.validate(n);
  if (!is_ns_in_cut(box, cut).fully_ns) throw MarginalIllDefined("box signals across cut " + cut.str());

  const std::vector<int> kept(cut.left.begin(), cut.left.end());
  const Shape& sh = box.shape();
  Shape out_shape{pick(sh.inputs, kept), pick(sh.outputs, kept)};
  const auto table = marginals_per_input(box, kept);
  std::vector<Rational> out(out_shape.entries());
  const std::size_t na = out_shape.output_tuples();
  for (std::size_t xk = 0; xk < out_shape.input_tuples(); ++xk) {
    // Discarded inputs fixed to 0; any choice gives the same table here.
    Tuple full(n, 0);
    const auto xt = tuple_at(xk, out_shape.inputs);
    for (std::size_t i = 0; i < kept.size(); ++i) full[static_cast<std::size_t>(kept[i])] = xt[i];
    const auto& row = table[tuple_index(full, sh.inputs)];
    for (std::size_t a = 0; a < na; ++a) out[xk * na + a] = row[a];
  }
  return Box(std::move(out_shape), std::move(out));
}

}  // namespace boxcert
