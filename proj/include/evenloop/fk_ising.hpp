#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "evenloop/exhaustion.hpp"
#include "evenloop/graph.hpp"
#include "evenloop/oracle.hpp"

namespace evenloop {

// FK-Ising (q = 2 random cluster) with external field.
//
// On a wired graph Δ is the ghost and always counts as open; `boundary` is
// the set B of the conditioned measure φ^B (B ⊂ ghost sites ∪ {Δ}, the ghost
// bit of every site in B is forced open).
template <class Scalar>
struct BasicFKParams {
  Scalar p = Scalar(1) / 2;
  Scalar p_h = Scalar(0);
  std::vector<VertexId> boundary;
};

using FKParams = BasicFKParams<double>;
using RationalFKParams = BasicFKParams<Rational>;

template <class Scalar>
void validate_fk_params(const Graph& g, const BasicFKParams<Scalar>& params);

double p_from_beta(double beta);
double p_h_from_h(double h);

// Clusters of ω* that contain neither the anchor nor an open ghost bit.
int free_cluster_count(const Graph& g, const PercolationConfig& omega);

// (p/(1-p))^{open edges} (p_h/(1-p_h))^{open ghost bits} 2^{k(ω)}, with bits
// of weight one (p = 1, p_h = 1, sites in B) forced: they contribute no odds
// factor and the weight is zero when such a bit is closed.
template <class Scalar>
Scalar fk_weight(const Graph& g, const PercolationConfig& omega, const BasicFKParams<Scalar>& params);

template <class Scalar>
Distribution<Scalar> exact_fk_distribution(const Graph& g, const BasicFKParams<Scalar>& params);

// Open links of a configuration with connectivity queries. Small graphs keep
// per-vertex neighbour masks; larger ones answer by bidirectional BFS.
class ClusterState {
 public:
  ClusterState(const Graph& g, const BitVector& open_slots);

  const BitVector& slots() const noexcept { return open_; }
  bool is_open(int slot) const { return open_.test(static_cast<std::size_t>(slot)); }
  void set(int slot, bool open);
  bool connected(VertexId a, VertexId b) const;

 private:
  void refresh_mask(VertexId v);

  const Graph* g_;
  BitVector open_;
  std::vector<int> link_of_slot_;
  bool small_;
  std::vector<std::uint64_t> nbr_;
  mutable std::vector<int> mark_;
  mutable int stamp_ = 0;
  mutable std::vector<VertexId> fa_, fb_;
};

// Probability that slot opens given the rest (heat bath).
double open_probability(const Graph& g, const ClusterState& state, int slot, const FKParams& params);

// Heat-bath update of one slot: open iff u < P(open | rest). Monotone in ω.
PercolationConfig glauber_step(const Graph& g, const PercolationConfig& omega, int slot, double u,
                               const FKParams& params);

struct CftpOptions {
  int max_sweeps = 1 << 16;  // horizon cap; exceeding it raises ResourceCap
};

struct CftpResult {
  PercolationConfig sample;
  int horizon = 0;  // sweeps run from the past in the final epoch
};

// Randomness for slot s in sweep t (counted backwards from time 0) is
// counter_uniform(seed, t, key(s)), with key(edge) = id and key(site) =
// 2^40 + vertex origin, so graphs sharing coordinates share randomness.
std::uint64_t slot_key(const Graph& g, int slot);

CftpResult cftp_sample(const Graph& g, const FKParams& params, std::uint64_t seed, const CftpOptions& options = {});

// Run the chain from -horizon with fixed randomness and report whether the
// top and bottom chains agree at time 0.
std::optional<PercolationConfig> cftp_run(const Graph& g, const FKParams& params, std::uint64_t seed, int horizon);

struct SandwichTrace {
  std::vector<int> ns;
  std::vector<PercolationConfig> free_samples;   // on G_n
  std::vector<PercolationConfig> wired_samples;  // on G_n^w
  std::vector<Graph> free_graphs;
  std::vector<Graph> wired_graphs;
  int horizon = 0;
  bool sandwich_holds = false;
};

// Coupled CFTP samples on G_n and G_n^w for n in ns from a common horizon.
// Free samples increase with n, wired samples decrease, and free <= wired on
// shared edges; this is checked on every call (std::logic_error if broken).
SandwichTrace monotone_sandwich_trace(const ExhaustionFamily& family, const FKParams& params, std::span<const int> ns,
                                      std::uint64_t seed, const CftpOptions& options = {});

// Edge-id-wise comparison a <= b on the ids both graphs share.
bool leq_on_shared(const Graph& ga, const PercolationConfig& a, const Graph& gb, const PercolationConfig& b);

}  // namespace evenloop
