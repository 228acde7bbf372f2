#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "evenloop/graph.hpp"

namespace evenloop {

using Rational = boost::multiprecision::cpp_rational;

// Configurations of a graph are coded as integers: bit i < |E| is edge i,
// bit |E| + j is the ghost bit of ghost_sites()[j].
constexpr int kEnumerationCap = 22;

int config_dimension(const Graph& g);
std::uint64_t encode(const Graph& g, const PercolationConfig& c);
PercolationConfig decode(const Graph& g, std::uint64_t code);

// Coordinate (code bit) of a slot, or -1 for a vertex slot that is not a site.
int code_bit_of_slot(const Graph& g, int slot);
std::uint64_t encode_slots(const Graph& g, const BitVector& slots);

// Lexicographic in the code. Throws ResourceCap above kEnumerationCap bits.
std::vector<PercolationConfig> enumerate_configs(const Graph& g);
void for_each_code(const Graph& g, const std::function<void(std::uint64_t)>& fn);

// Sparse table on {0,1}^dimension, sorted by code, no zero entries.
template <class Scalar>
class Distribution {
 public:
  using Entry = std::pair<std::uint64_t, Scalar>;

  explicit Distribution(int dimension = 0) : dimension_(dimension) {}
  // Merges duplicate codes and drops zeros; does not normalize.
  static Distribution from_entries(int dimension, std::vector<Entry> entries);
  static Distribution point_mass(int dimension, std::uint64_t code);

  int dimension() const noexcept { return dimension_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t support_size() const noexcept { return entries_.size(); }
  Scalar probability(std::uint64_t code) const;
  Scalar total() const;
  // Throws InputError on a zero total.
  void normalize();

 private:
  int dimension_ = 0;
  std::vector<Entry> entries_;
};

using ExactDistribution = Distribution<double>;
using RationalDistribution = Distribution<Rational>;

template <class Scalar>
using WeightFn = std::function<Scalar(const PercolationConfig&)>;

// Normalized table of a weight function over all configurations of g.
template <class Scalar>
Distribution<Scalar> exact_distribution(const Graph& g, const WeightFn<Scalar>& weight);

template <class Scalar>
Distribution<Scalar> uniform_on(int dimension, std::span<const std::uint64_t> codes);

// Image of d under f; f must land in {0,1}^out_dimension.
template <class Scalar>
Distribution<Scalar> pushforward(const Distribution<Scalar>& d, const std::function<std::uint64_t(std::uint64_t)>& f,
                                 int out_dimension);

// Image of d ⊗ aux under f(code, aux_code).
template <class Scalar>
Distribution<Scalar> pushforward(const Distribution<Scalar>& d, const Distribution<Scalar>& aux,
                                 const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& f,
                                 int out_dimension);

// Law of η ∨ X for η ~ d and X an independent product Bernoulli with the
// given per-coordinate success probabilities.
template <class Scalar>
Distribution<Scalar> or_with_bernoulli(const Distribution<Scalar>& d, std::span<const Scalar> probs);

template <class Scalar>
Distribution<Scalar> product_bernoulli(std::span<const Scalar> probs);

template <class Scalar>
Scalar tv_distance(const Distribution<Scalar>& a, const Distribution<Scalar>& b);

// Per-coordinate P(bit = 1).
template <class Scalar>
std::vector<Scalar> marginals(const Distribution<Scalar>& d);

// Law of the listed coordinates; output bit i is input bit coords[i].
template <class Scalar>
Distribution<Scalar> restrict_to(const Distribution<Scalar>& d, std::span<const int> coords);

ExactDistribution to_double(const RationalDistribution& d);
ExactDistribution empirical_distribution(int dimension, std::span<const std::uint64_t> samples);

// One row per support element: bit string (bit 0 first), probability.
void write_csv(std::ostream& out, const ExactDistribution& d);
void write_csv(std::ostream& out, const RationalDistribution& d);

std::string code_string(std::uint64_t code, int dimension);

}  // namespace evenloop
