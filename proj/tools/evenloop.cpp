#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "evenloop/cycle_algebra.hpp"
#include "evenloop/errors.hpp"
#include "evenloop/exhaustion.hpp"
#include "evenloop/fk_ising.hpp"
#include "evenloop/graph_io.hpp"
#include "evenloop/limits_lab.hpp"
#include "evenloop/loop_o1.hpp"
#include "evenloop/oracle.hpp"
#include "evenloop/planar.hpp"
#include "evenloop/verify.hpp"
#include "evenloop/wilson.hpp"

using namespace evenloop;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

std::string fingerprint() {
  std::string s = "evenloop 1.0.0 (";
#ifdef __VERSION__
  s += "gcc ";
  s += __VERSION__;
#endif
  s += ", c++" + std::to_string(__cplusplus / 100 % 100) + ")";
  return s;
}

struct Options {
  std::string graph;
  std::string map;
  std::string boundary = "free";
  std::string out;
  std::string format = "csv";
  std::string sink = "auto";
  std::string family = "ladder";
  std::string ns;
  std::string suite = "all";
  double x = 0.5;
  double y = 0.0;
  double p = 0.5;
  double p_h = 0.0;
  double beta = 0.0;
  double h = 0.0;
  bool beta_set = false;
  bool h_set = false;
  bool rational = false;
  int n = 1000;
  int k = 3;
  int n_max = 12;
  int lab_n = -1;
  int samples = 10000;
  int verify_samples = 50000;
  int trials = 20;
  int max_edges = 10;
  int rail_pair = 0;
  bool rail_pair_set = false;
  int circumference = 4;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InputError("cannot open output file '" + o.out + "'");
  f << text;
}

void require_seed(const Options& o) {
  if (!o.seed_set) throw InputError("--seed is required for stochastic commands");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json envelope(const std::string& command, const Options& o, bool stochastic) {
  json j{{"tool", fingerprint()}, {"command", command}};
  if (stochastic) j["seed"] = o.seed;
  return j;
}

std::string csv_header(const std::string& command, const Options& o, const json& params) {
  std::ostringstream out;
  out << "# " << fingerprint() << "\n# command: " << command << "\n";
  if (o.seed_set) out << "# seed: " << o.seed << "\n";
  out << "# params: " << params.dump() << "\n";
  return out.str();
}

bool is_family_spec(const std::string& s) {
  std::ifstream probe(s);
  return !probe && s.find(':') != std::string::npos;
}

struct Resolved {
  Graph graph;
  std::vector<VertexId> boundary;
};

Resolved resolve(const Options& o) {
  if (o.graph.empty()) throw InputError("--graph is required");
  Resolved r;
  if (o.boundary == "wired") {
    std::string src = o.graph;
    if (is_family_spec(src)) {
      if (src.rfind("family:", 0) == 0) src = src.substr(7);
      if (src.rfind("wired:", 0) != 0) src = "wired:" + src;
    }
    r.graph = load_graph(src);
    if (!r.graph.wired()) throw InputError("--boundary wired needs a wired graph or a family spec");
    r.boundary = {*r.graph.wired()};
    return r;
  }
  r.graph = load_graph(o.graph);
  if (r.graph.wired()) r.boundary = {*r.graph.wired()};
  if (o.boundary == "free") return r;
  std::stringstream ss(o.boundary);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "delta" || item == "Δ") {
      if (!r.graph.wired()) throw InputError("boundary names Δ but the graph is not wired");
      continue;
    }
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw InputError("");
      r.boundary.push_back(v);
    } catch (const std::exception&) {
      throw InputError("--boundary expects free, wired or a comma-separated vertex list");
    }
  }
  return r;
}

FKParams fk_from(const Options& o, const std::vector<VertexId>& boundary) {
  FKParams fk{o.p, o.p_h, boundary};
  if (o.beta_set) fk.p = p_from_beta(o.beta);
  if (o.h_set) fk.p_h = p_h_from_h(o.h);
  return fk;
}

json fk_params_json(const FKParams& fk) {
  json j{{"p", fk.p}, {"p_h", fk.p_h}, {"boundary", fk.boundary}};
  j["x"] = x_from_p(fk.p);
  j["y"] = x_from_p(fk.p_h);
  return j;
}

json loop_params_json(const LoopParams& lp) {
  json j{{"x", lp.x}, {"y", lp.y}, {"boundary", lp.boundary}};
  if (lp.x <= 1 && lp.y <= 1) j["map"] = to_json(params_from_xy(lp.x, lp.y));
  return j;
}

std::string config_row(const Graph& g, const PercolationConfig& c) {
  return edge_string(c) + "," + vertex_string(g, c) + "\n";
}

// ---------------------------------------------------------------------------

int cmd_graph(const Options& o) {
  const Resolved r = resolve(o);
  const Graph& g = r.graph;
  json j = envelope("graph", o, false);
  j["graph"] = graph_to_json(g);
  j["num_vertices"] = g.num_vertices();
  j["num_edges"] = g.num_edges();
  j["num_sites"] = g.num_sites();
  j["wired"] = g.wired().has_value();
  j["components"] = components(g).count;
  j["even_subgraph_exponent"] = even_subgraph_exponent(g, r.boundary);
  j["boundary"] = r.boundary;
  emit(o, dump(j));
  return kExitOk;
}

int cmd_sample(const std::string& model, const Options& o) {
  require_seed(o);
  if (o.n < 0) throw InputError("--n must be non-negative");
  const Resolved r = resolve(o);
  const Graph& g = r.graph;
  std::ostringstream out;
  const std::string command = "sample " + model;
  if (model == "loop") {
    const LoopParams lp{o.x, o.y, r.boundary};
    out << csv_header(command, o, loop_params_json(lp)) << "edges,vertices\n";
    for (int i = 0; i < o.n; ++i) {
      const CoupledSample s = couple_sample(g, lp, derive_seed(o.seed, static_cast<std::uint64_t>(i)));
      if (!loop_support_ok(g, s.eta, lp.boundary)) throw std::logic_error("sample loop: emitted sample is not even");
      out << config_row(g, s.eta);
    }
  } else if (model == "fk") {
    const FKParams fk = fk_from(o, r.boundary);
    validate_fk_params(g, fk);
    out << csv_header(command, o, fk_params_json(fk)) << "edges,vertices\n";
    for (int i = 0; i < o.n; ++i) {
      const auto s = cftp_sample(g, fk, derive_seed(o.seed, static_cast<std::uint64_t>(i))).sample;
      if (fk_weight(g, s, fk) <= 0) throw std::logic_error("sample fk: emitted sample has zero weight");
      out << config_row(g, s);
    }
  } else if (model == "ising") {
    const FKParams fk{p_from_beta(o.beta), p_h_from_h(o.h), {}};
    json params{{"beta", o.beta}, {"h", o.h}, {"p", fk.p}, {"p_h", fk.p_h}};
    out << csv_header(command, o, params) << "minus_spins\n";
    const std::optional<int> bspin = g.anchor() ? std::optional<int>(1) : std::nullopt;
    for (int i = 0; i < o.n; ++i) {
      const std::uint64_t si = derive_seed(o.seed, static_cast<std::uint64_t>(i));
      const auto w = cftp_sample(g, fk, si).sample;
      Rng rng(derive_seed(si, 9));
      const SpinConfig s = ising_from_fk(g, w, bspin, rng);
      std::string row;
      for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (g.is_ordinary(v)) row += s[static_cast<std::size_t>(v)] == -1 ? '1' : '0';
      out << row << "\n";
    }
  } else if (model == "ues") {
    const GeneratingSet gen = g.wired() ? wired_ues_generators(g) : free_ues_generators(g);
    out << csv_header(command, o, json{{"generators", gen.size()}}) << "edges,vertices\n";
    Rng rng(derive_seed(o.seed, 0));
    for (int i = 0; i < o.n; ++i) {
      const PercolationConfig c = PercolationConfig::from_slots(g, sample_uniform_even(gen, rng));
      if (!loop_support_ok(g, c, r.boundary)) throw std::logic_error("sample ues: emitted sample is not even");
      out << config_row(g, c);
    }
  } else {
    throw InputError("unknown model '" + model + "'");
  }
  emit(o, out.str());
  return kExitOk;
}

template <class Scalar>
std::string table(const Distribution<Scalar>& d) {
  std::ostringstream out;
  write_csv(out, d);
  return out.str();
}

int cmd_exact(const std::string& model, const Options& o) {
  const Resolved r = resolve(o);
  const Graph& g = r.graph;
  std::ostringstream out;
  const std::string command = "exact " + model;
  if (model == "fk") {
    const FKParams fk = fk_from(o, r.boundary);
    out << csv_header(command, o, fk_params_json(fk));
    if (o.rational)
      out << table(exact_fk_distribution(g, RationalFKParams{Rational(fk.p), Rational(fk.p_h), fk.boundary}));
    else
      out << table(exact_fk_distribution(g, fk));
  } else if (model == "loop") {
    const LoopParams lp{o.x, o.y, r.boundary};
    out << csv_header(command, o, loop_params_json(lp));
    if (o.rational)
      out << table(exact_loop_distribution(g, RationalLoopParams{Rational(lp.x), Rational(lp.y), lp.boundary}));
    else
      out << table(exact_loop_distribution(g, lp));
  } else if (model == "ising") {
    out << csv_header(command, o, json{{"beta", o.beta}, {"h", o.h}});
    write_csv(out, exact_ising_distribution(g, o.beta, o.h));
  } else if (model == "coupling") {
    const LoopParams lp{o.x, o.y, r.boundary};
    const double tv = tv_distance(coupled_fk_pushforward(g, lp), exact_fk_distribution(g, fk_params_for(lp)));
    json j = envelope(command, o, false);
    j["params"] = loop_params_json(lp);
    j["tv"] = tv;
    emit(o, dump(j));
    return tv < 1e-12 ? kExitOk : kExitFail;
  } else {
    throw InputError("unknown model '" + model + "'");
  }
  emit(o, out.str());
  return kExitOk;
}

int cmd_verify(const Options& o) {
  require_seed(o);
  VerifyOptions vo;
  vo.max_edges = o.max_edges;
  vo.seed = o.seed;
  vo.samples = o.verify_samples;
  vo.trials = o.trials;
  std::vector<std::string> suites;
  if (o.suite == "all")
    suites = verify_suite_names();
  else
    suites = {o.suite};
  json j = envelope("verify", o, true);
  j["suites"] = json::array();
  bool ok = true;
  for (const auto& s : suites) {
    const SuiteReport r = run_verify_suite(s, vo);
    ok = ok && r.pass();
    j["suites"].push_back(to_json(r));
  }
  j["pass"] = ok;
  emit(o, dump(j));
  return ok ? kExitOk : kExitFail;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw InputError("expected a comma-separated integer list, got '" + s + "'");
    }
  }
  return out;
}

int cmd_lab(const std::string& what, const Options& o) {
  const ExhaustionFamily fam(parse_lab_family(o.family), o.circumference);
  json j = envelope("lab " + what, o, what != "stabilize");
  j["family"] = std::string(lab_family_name(fam.kind()));
  int status = kExitOk;
  if (what == "stabilize") {
    const StabilizationReport r = projection_stabilization(fam, o.k, o.n_max);
    j["report"] = to_json(r);
  } else if (what == "ues") {
    require_seed(o);
    const int n = o.lab_n >= 0 ? o.lab_n : o.n_max;
    const UesComparison r = o.rail_pair_set ? free_vs_wired_ues(fam, fam.rail_pair(o.rail_pair), n, o.samples, o.seed)
                                            : free_vs_wired_ues(fam, o.k, n, o.samples, o.seed);
    j["report"] = to_json(r);
  } else if (what == "parity") {
    require_seed(o);
    if (fam.kind() != LabFamily::ladder) throw InputError("lab parity runs on the ladder family");
    const ParityReport r = parity_experiment(o.lab_n >= 0 ? o.lab_n : 8, o.samples, o.seed);
    j["report"] = to_json(r);
    if (r.cut_violations != 0) status = kExitFail;
  } else if (what == "converge") {
    require_seed(o);
    std::vector<int> ns = o.ns.empty() ? std::vector<int>{} : parse_int_list(o.ns);
    if (ns.empty())
      for (int n = o.k; n <= o.n_max; n += 2) ns.push_back(n);
    const ConvergenceReport r = loop_convergence(fam, o.k, o.x, o.y, ns, o.samples, o.seed);
    j["params"] = loop_params_json(LoopParams{o.x, o.y, {}});
    j["report"] = to_json(r);
  } else {
    throw InputError("unknown lab experiment '" + what + "'");
  }
  emit(o, dump(j));
  return status;
}

VertexId resolve_sink(const Graph& g, const std::string& sink) {
  if (sink == "auto") return default_sink(g);
  try {
    return std::stoi(sink);
  } catch (const std::exception&) {
    throw InputError("--sink expects auto or a vertex index");
  }
}

int cmd_wilson(const std::string& what, const Options& o) {
  require_seed(o);
  const Graph g = load_graph(o.graph.empty() ? throw InputError("--graph is required") : o.graph);
  const VertexId sink = resolve_sink(g, o.sink);
  if (what == "sample") {
    std::ostringstream out;
    out << csv_header("wilson sample", o, json{{"sink", sink}}) << "edges\n";
    for (int i = 0; i < o.n; ++i) {
      const OrientedTree t = wilson_ust(g, sink, {}, derive_seed(o.seed, static_cast<std::uint64_t>(i)));
      if (!is_spanning_tree_toward(g, t)) throw std::logic_error("wilson: output is not a spanning tree");
      out << t.edge_set(g).to_string() << "\n";
    }
    emit(o, out.str());
    return kExitOk;
  }
  if (what == "popcheck") {
    const InvarianceReport r = legal_order_invariance_check(g, sink, o.seed, o.trials);
    json j = envelope("wilson popcheck", o, true);
    j["sink"] = sink;
    j["report"] = to_json(r);
    emit(o, dump(j));
    return r.all_equal ? kExitOk : kExitFail;
  }
  throw InputError("unknown wilson command '" + what + "'");
}

int cmd_planar(const std::string& what, const Options& o) {
  if (o.map.empty()) throw InputError("--map is required");
  const PlanarMap m = load_map(o.map);
  json j = envelope("planar " + what, o, what == "duality" && o.n > 0);
  if (what == "faces") {
    const FaceStructure fs = trace_faces(m);
    json faces = json::array();
    for (const auto& f : fs.faces) {
      json edges = json::array();
      for (const int d : f) edges.push_back(dart_edge(d));
      faces.push_back(edges);
    }
    j["faces"] = faces;
    j["outer"] = fs.outer;
  } else if (what == "dual") {
    j["dual"] = map_to_json(dual_map(m).map);
  } else if (what == "duality") {
    if (o.n > 0) require_seed(o);
    const DualityReport r = duality_check(m, o.beta, o.n, o.seed);
    j["report"] = to_json(r);
  } else {
    throw InputError("unknown planar command '" + what + "'");
  }
  emit(o, dump(j));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evenloop: Loop O(1), FK-Ising, uniform even subgraphs and Wilson's algorithm at finite scale"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");
  Options o;
  std::string model;
  std::string action;

  auto seed_opt = [&](CLI::App* c) {
    c->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) {
      o.seed = s;
      o.seed_set = true;
    }, "random seed");
  };
  auto out_opt = [&](CLI::App* c) { c->add_option("--out", o.out, "output file (default stdout)"); };
  auto graph_opt = [&](CLI::App* c) {
    c->add_option("--graph", o.graph, "graph JSON file or family spec (ladder:12, family:grid:6, wired:path:5)");
    c->add_option("--boundary", o.boundary, "free, wired, or a comma-separated vertex list");
  };
  auto loop_opts = [&](CLI::App* c) {
    c->add_option("--x", o.x, "edge activity x");
    c->add_option("--y", o.y, "ghost activity y");
  };
  auto fk_opts = [&](CLI::App* c) {
    c->add_option("--p", o.p, "FK edge parameter p");
    c->add_option("--p-h,--ph", o.p_h, "FK ghost parameter p_h");
    c->add_option_function<double>("--beta", [&](const double& b) {
      o.beta = b;
      o.beta_set = true;
    }, "inverse temperature (p = 1 - e^{-2 beta})");
    c->add_option_function<double>("--h", [&](const double& h) {
      o.h = h;
      o.h_set = true;
    }, "external field (p_h = 1 - e^{-2 h})");
  };

  auto* graph_cmd = app.add_subcommand("graph", "describe a graph");
  graph_opt(graph_cmd);
  out_opt(graph_cmd);

  auto* sample = app.add_subcommand("sample", "draw samples (CSV)");
  sample->add_option("model", model, "loop | fk | ising | ues")->required();
  graph_opt(sample);
  loop_opts(sample);
  fk_opts(sample);
  sample->add_option("--n", o.n, "number of samples");
  seed_opt(sample);
  out_opt(sample);

  auto* loop_cmd = app.add_subcommand("loop", "Loop O(1) sampler");
  loop_cmd->add_option("action", action, "sample")->required();
  graph_opt(loop_cmd);
  loop_opts(loop_cmd);
  loop_cmd->add_option("--n", o.n, "number of samples");
  seed_opt(loop_cmd);
  out_opt(loop_cmd);

  auto* exact = app.add_subcommand("exact", "exact probability tables (CSV)");
  exact->add_option("model", model, "fk | loop | ising | coupling")->required();
  graph_opt(exact);
  loop_opts(exact);
  fk_opts(exact);
  exact->add_flag("--rational", o.rational, "exact rational arithmetic");
  out_opt(exact);

  auto* verify = app.add_subcommand("verify", "run invariant suites; exit 1 on failure");
  verify->add_option("--suite", o.suite, "coupling | order | duality | uniformity | all");
  verify->add_option("--max-edges", o.max_edges, "corpus filter on |E| + #sites");
  verify->add_option("--samples", o.verify_samples, "samples for statistical checks");
  verify->add_option("--trials", o.trials, "popping-order trials per graph");
  seed_opt(verify);
  out_opt(verify);

  auto* lab = app.add_subcommand("lab", "exhaustion experiments (JSON)");
  lab->add_option("experiment", action, "converge | stabilize | parity | ues")->required();
  lab->add_option("--family", o.family, "path | ladder | grid | tree | cylinder");
  lab->add_option("--k", o.k, "window radius");
  lab->add_option("--nmax", o.n_max, "largest truncation");
  lab->add_option("--n", o.lab_n, "truncation for ues and parity");
  lab->add_option("--ns", o.ns, "comma-separated truncations for converge");
  lab->add_option("--samples", o.samples, "number of samples");
  lab->add_option_function<int>("--rail-pair", [&](const int& i) {
    o.rail_pair = i;
    o.rail_pair_set = true;
  }, "ladder rail pair at position i as the window");
  lab->add_option("--circumference", o.circumference, "cylinder circumference");
  loop_opts(lab);
  seed_opt(lab);
  out_opt(lab);

  auto* wilson = app.add_subcommand("wilson", "Wilson's algorithm");
  wilson->add_option("action", action, "sample | popcheck")->required();
  wilson->add_option("--graph", o.graph, "graph JSON file or family spec");
  wilson->add_option("--sink", o.sink, "auto (Δ if wired, else 0) or a vertex index");
  wilson->add_option("--n", o.n, "number of trees");
  wilson->add_option("--trials", o.trials, "popping-order trials");
  seed_opt(wilson);
  out_opt(wilson);

  auto* planar = app.add_subcommand("planar", "planar maps and the Ising gradient");
  planar->add_option("action", action, "faces | dual | duality")->required();
  planar->add_option("--map", o.map, "map JSON file or grid:RxC / cycle:N / path:N");
  fk_opts(planar);
  planar->add_option("--n", o.n, "samples (0 = exact tables)")->default_val(0);
  seed_opt(planar);
  out_opt(planar);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (graph_cmd->parsed()) return cmd_graph(o);
    if (sample->parsed()) return cmd_sample(model, o);
    if (loop_cmd->parsed()) {
      if (action != "sample") throw InputError("loop supports: sample");
      return cmd_sample("loop", o);
    }
    if (exact->parsed()) return cmd_exact(model, o);
    if (verify->parsed()) return cmd_verify(o);
    if (lab->parsed()) return cmd_lab(action, o);
    if (wilson->parsed()) return cmd_wilson(action, o);
    if (planar->parsed()) return cmd_planar(action, o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ResourceCap& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::logic_error& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitInput;
}
