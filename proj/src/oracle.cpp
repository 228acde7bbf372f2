#include "evenloop/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <unordered_map>

#include "evenloop/errors.hpp"

namespace evenloop {

int config_dimension(const Graph& g) { return g.num_edges() + g.num_sites(); }

namespace {

void check_code_width(int dimension) {
  if (dimension > 64) throw ResourceCap("configuration codes are limited to 64 bits");
}

void check_enumerable(int dimension) {
  if (dimension > kEnumerationCap)
    throw ResourceCap("state space 2^" + std::to_string(dimension) + " exceeds the enumeration cap 2^" +
                      std::to_string(kEnumerationCap));
}

template <class Scalar>
bool is_zero(const Scalar& s) {
  return s == 0;
}

}  // namespace

std::uint64_t encode(const Graph& g, const PercolationConfig& c) {
  c.check_fits(g);
  check_code_width(config_dimension(g));
  std::uint64_t code = 0;
  c.edge_bits.for_each_set([&](std::size_t i) { code |= std::uint64_t{1} << i; });
  c.vertex_bits.for_each_set([&](std::size_t v) {
    code |= std::uint64_t{1} << (g.num_edges() + g.site_index(static_cast<VertexId>(v)));
  });
  return code;
}

PercolationConfig decode(const Graph& g, std::uint64_t code) {
  const int dim = config_dimension(g);
  check_code_width(dim);
  if (dim < 64 && (code >> dim) != 0) throw InputError("decode: code has bits beyond the configuration space");
  PercolationConfig c = PercolationConfig::zeros(g);
  for (int i = 0; i < g.num_edges(); ++i)
    if ((code >> i) & 1U) c.edge_bits.set(static_cast<std::size_t>(i));
  const auto sites = g.ghost_sites();
  for (std::size_t j = 0; j < sites.size(); ++j)
    if ((code >> (g.num_edges() + static_cast<int>(j))) & 1U) c.vertex_bits.set(static_cast<std::size_t>(sites[j]));
  return c;
}

int code_bit_of_slot(const Graph& g, int slot) {
  if (!g.is_vertex_slot(slot)) return slot;
  const int site = g.site_index(slot - g.num_edges());
  return site < 0 ? -1 : g.num_edges() + site;
}

std::uint64_t encode_slots(const Graph& g, const BitVector& slots) {
  if (static_cast<int>(slots.size()) != g.num_slots()) throw InputError("encode_slots: host size mismatch");
  check_code_width(config_dimension(g));
  std::uint64_t code = 0;
  slots.for_each_set([&](std::size_t s) {
    const int bit = code_bit_of_slot(g, static_cast<int>(s));
    if (bit < 0) throw InputError("encode_slots: ghost bit at a vertex that is not a site");
    code |= std::uint64_t{1} << bit;
  });
  return code;
}

void for_each_code(const Graph& g, const std::function<void(std::uint64_t)>& fn) {
  const int dim = config_dimension(g);
  check_enumerable(dim);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << dim); ++code) fn(code);
}

std::vector<PercolationConfig> enumerate_configs(const Graph& g) {
  std::vector<PercolationConfig> out;
  for_each_code(g, [&](std::uint64_t code) { out.push_back(decode(g, code)); });
  return out;
}

// ---------------------------------------------------------------------------

template <class Scalar>
Distribution<Scalar> Distribution<Scalar>::from_entries(int dimension, std::vector<Entry> entries) {
  check_code_width(dimension);
  Distribution d(dimension);
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& e : entries) {
    if (dimension < 64 && (e.first >> dimension) != 0) throw InputError("distribution: code outside the universe");
    if (!d.entries_.empty() && d.entries_.back().first == e.first)
      d.entries_.back().second += e.second;
    else
      d.entries_.push_back(std::move(e));
  }
  std::erase_if(d.entries_, [](const Entry& e) { return is_zero(e.second); });
  for (const auto& e : d.entries_)
    if (e.second < 0) throw InputError("distribution: negative mass");
  return d;
}

template <class Scalar>
Distribution<Scalar> Distribution<Scalar>::point_mass(int dimension, std::uint64_t code) {
  return from_entries(dimension, {{code, Scalar(1)}});
}

template <class Scalar>
Scalar Distribution<Scalar>::probability(std::uint64_t code) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), code,
                             [](const Entry& e, std::uint64_t c) { return e.first < c; });
  if (it == entries_.end() || it->first != code) return Scalar(0);
  return it->second;
}

template <class Scalar>
Scalar Distribution<Scalar>::total() const {
  Scalar t(0);
  for (const auto& e : entries_) t += e.second;
  return t;
}

template <class Scalar>
void Distribution<Scalar>::normalize() {
  const Scalar t = total();
  if (is_zero(t)) throw InputError("distribution: zero partition function");
  for (auto& e : entries_) e.second /= t;
}

template <class Scalar>
Distribution<Scalar> exact_distribution(const Graph& g, const WeightFn<Scalar>& weight) {
  const int dim = config_dimension(g);
  std::vector<typename Distribution<Scalar>::Entry> entries;
  for_each_code(g, [&](std::uint64_t code) {
    Scalar w = weight(decode(g, code));
    if (w < 0) throw InputError("exact_distribution: negative weight");
    if (!is_zero(w)) entries.emplace_back(code, std::move(w));
  });
  auto d = Distribution<Scalar>::from_entries(dim, std::move(entries));
  d.normalize();
  return d;
}

template <class Scalar>
Distribution<Scalar> uniform_on(int dimension, std::span<const std::uint64_t> codes) {
  std::vector<typename Distribution<Scalar>::Entry> entries;
  for (const auto c : codes) entries.emplace_back(c, Scalar(1));
  auto d = Distribution<Scalar>::from_entries(dimension, std::move(entries));
  d.normalize();
  return d;
}

namespace {

// Dense below 2^22 outcomes, hashed above.
template <class Scalar>
class Accumulator {
 public:
  explicit Accumulator(int dimension) : dimension_(dimension) {
    check_code_width(dimension);
    if (dimension <= kEnumerationCap) dense_.assign(std::size_t{1} << dimension, Scalar(0));
  }
  void add(std::uint64_t code, const Scalar& mass) {
    if (!dense_.empty())
      dense_[code] += mass;
    else
      sparse_[code] += mass;
  }
  Distribution<Scalar> finish() {
    std::vector<typename Distribution<Scalar>::Entry> entries;
    if (!dense_.empty()) {
      for (std::size_t c = 0; c < dense_.size(); ++c)
        if (!is_zero(dense_[c])) entries.emplace_back(c, std::move(dense_[c]));
    } else {
      for (auto& [c, m] : sparse_) entries.emplace_back(c, std::move(m));
    }
    return Distribution<Scalar>::from_entries(dimension_, std::move(entries));
  }

 private:
  int dimension_;
  std::vector<Scalar> dense_;
  std::unordered_map<std::uint64_t, Scalar> sparse_;
};

}  // namespace

template <class Scalar>
Distribution<Scalar> pushforward(const Distribution<Scalar>& d, const std::function<std::uint64_t(std::uint64_t)>& f,
                                 int out_dimension) {
  Accumulator<Scalar> acc(out_dimension);
  for (const auto& [code, mass] : d.entries()) {
    const std::uint64_t image = f(code);
    if (out_dimension < 64 && (image >> out_dimension) != 0) throw InputError("pushforward: image outside the universe");
    acc.add(image, mass);
  }
  return acc.finish();
}

template <class Scalar>
Distribution<Scalar> pushforward(const Distribution<Scalar>& d, const Distribution<Scalar>& aux,
                                 const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& f,
                                 int out_dimension) {
  Accumulator<Scalar> acc(out_dimension);
  for (const auto& [code, mass] : d.entries())
    for (const auto& [a, amass] : aux.entries()) {
      const std::uint64_t image = f(code, a);
      if (out_dimension < 64 && (image >> out_dimension) != 0)
        throw InputError("pushforward: image outside the universe");
      acc.add(image, mass * amass);
    }
  return acc.finish();
}

template <class Scalar>
Distribution<Scalar> or_with_bernoulli(const Distribution<Scalar>& d, std::span<const Scalar> probs) {
  const int dim = d.dimension();
  if (static_cast<int>(probs.size()) != dim) throw InputError("or_with_bernoulli: one probability per coordinate");
  check_enumerable(dim);
  const std::uint64_t all = dim == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << dim) - 1;
  Accumulator<Scalar> acc(dim);
  std::vector<Scalar> weight;
  for (const auto& [code, mass] : d.entries()) {
    const std::uint64_t free = all & ~code;
    // enumerate subsets S of the free coordinates; X = S there
    std::vector<int> bits;
    for (int i = 0; i < dim; ++i)
      if ((free >> i) & 1U) bits.push_back(i);
    const std::size_t k = bits.size();
    weight.assign(std::size_t{1} << k, Scalar(0));
    weight[0] = mass;
    for (std::size_t j = 0; j < k; ++j) {
      const Scalar& q = probs[static_cast<std::size_t>(bits[j])];
      const Scalar nq = Scalar(1) - q;
      const std::size_t half = std::size_t{1} << j;
      for (std::size_t s = 0; s < half; ++s) {
        weight[s + half] = weight[s] * q;
        weight[s] *= nq;
      }
    }
    for (std::size_t s = 0; s < weight.size(); ++s) {
      if (is_zero(weight[s])) continue;
      std::uint64_t image = code;
      for (std::size_t j = 0; j < k; ++j)
        if ((s >> j) & 1U) image |= std::uint64_t{1} << bits[j];
      acc.add(image, weight[s]);
    }
  }
  return acc.finish();
}

template <class Scalar>
Distribution<Scalar> product_bernoulli(std::span<const Scalar> probs) {
  const int dim = static_cast<int>(probs.size());
  auto zero = Distribution<Scalar>::point_mass(dim, 0);
  return or_with_bernoulli(zero, probs);
}

template <class Scalar>
Scalar tv_distance(const Distribution<Scalar>& a, const Distribution<Scalar>& b) {
  if (a.dimension() != b.dimension()) throw InputError("tv_distance: universe mismatch");
  Scalar sum(0);
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  auto absdiff = [](const Scalar& x, const Scalar& y) { return x > y ? Scalar(x - y) : Scalar(y - x); };
  while (ia != a.entries().end() || ib != b.entries().end()) {
    if (ib == b.entries().end() || (ia != a.entries().end() && ia->first < ib->first)) {
      sum += ia->second;
      ++ia;
    } else if (ia == a.entries().end() || ib->first < ia->first) {
      sum += ib->second;
      ++ib;
    } else {
      sum += absdiff(ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
  return sum / 2;
}

template <class Scalar>
std::vector<Scalar> marginals(const Distribution<Scalar>& d) {
  std::vector<Scalar> out(static_cast<std::size_t>(d.dimension()), Scalar(0));
  for (const auto& [code, mass] : d.entries())
    for (int i = 0; i < d.dimension(); ++i)
      if ((code >> i) & 1U) out[static_cast<std::size_t>(i)] += mass;
  return out;
}

template <class Scalar>
Distribution<Scalar> restrict_to(const Distribution<Scalar>& d, std::span<const int> coords) {
  for (const int c : coords)
    if (c < 0 || c >= d.dimension()) throw InputError("restrict_to: coordinate out of range");
  std::vector<int> cs(coords.begin(), coords.end());
  return pushforward<Scalar>(
      d,
      [cs](std::uint64_t code) {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < cs.size(); ++i)
          if ((code >> cs[i]) & 1U) out |= std::uint64_t{1} << i;
        return out;
      },
      static_cast<int>(cs.size()));
}

ExactDistribution to_double(const RationalDistribution& d) {
  std::vector<ExactDistribution::Entry> entries;
  for (const auto& [code, mass] : d.entries()) entries.emplace_back(code, static_cast<double>(mass));
  return ExactDistribution::from_entries(d.dimension(), std::move(entries));
}

ExactDistribution empirical_distribution(int dimension, std::span<const std::uint64_t> samples) {
  if (samples.empty()) throw InputError("empirical_distribution: no samples");
  std::vector<std::uint64_t> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<ExactDistribution::Entry> entries;
  const double w = 1.0 / static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    entries.emplace_back(sorted[i], static_cast<double>(j - i) * w);
    i = j;
  }
  return ExactDistribution::from_entries(dimension, std::move(entries));
}

std::string code_string(std::uint64_t code, int dimension) {
  std::string s(static_cast<std::size_t>(dimension), '0');
  for (int i = 0; i < dimension; ++i)
    if ((code >> i) & 1U) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

void write_csv(std::ostream& out, const ExactDistribution& d) {
  out << "config,probability\n";
  char buf[40];
  for (const auto& [code, mass] : d.entries()) {
    std::snprintf(buf, sizeof buf, "%.17g", mass);
    out << code_string(code, d.dimension()) << ',' << buf << '\n';
  }
}

void write_csv(std::ostream& out, const RationalDistribution& d) {
  out << "config,probability\n";
  for (const auto& [code, mass] : d.entries()) out << code_string(code, d.dimension()) << ',' << mass << '\n';
}

#define EVENLOOP_INSTANTIATE(S)                                                                                    \
  template class Distribution<S>;                                                                                  \
  template Distribution<S> exact_distribution<S>(const Graph&, const WeightFn<S>&);                                \
  template Distribution<S> uniform_on<S>(int, std::span<const std::uint64_t>);                                     \
  template Distribution<S> pushforward<S>(const Distribution<S>&, const std::function<std::uint64_t(std::uint64_t)>&, \
                                          int);                                                                    \
  template Distribution<S> pushforward<S>(const Distribution<S>&, const Distribution<S>&,                         \
                                          const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>&, int); \
  template Distribution<S> or_with_bernoulli<S>(const Distribution<S>&, std::span<const S>);                      \
  template Distribution<S> product_bernoulli<S>(std::span<const S>);                                               \
  template S tv_distance<S>(const Distribution<S>&, const Distribution<S>&);                                       \
  template std::vector<S> marginals<S>(const Distribution<S>&);                                                    \
  template Distribution<S> restrict_to<S>(const Distribution<S>&, std::span<const int>);

EVENLOOP_INSTANTIATE(double)
EVENLOOP_INSTANTIATE(Rational)

#undef EVENLOOP_INSTANTIATE

}  // namespace evenloop
