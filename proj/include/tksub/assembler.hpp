#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tksub/certify.hpp"
#include "tksub/gadgets.hpp"
#include "tksub/graph.hpp"

namespace tksub {

enum class RunMode { Paper, Desk };
enum class KappaRule { Sqrt, Linear };

const char* to_string(RunMode m);
const char* to_string(KappaRule r);

// Explicit constants for desk-scale runs.
struct DeskOverrides {
  int m = 4;                       // expansion radius bound of adjuster ends
  int D = 1;                       // adjuster end size
  int ell = 0;                     // 0 picks the smallest even length seen in a dry run
  UnitParams unit{3, 1, 2, 2};     // units carrying the branch vertices
  UnitParams router_unit{1, 1, 1, 2};  // fresh units grown while routing
  int adjuster_steps = 1;
  int unit_count = 0;              // 0 builds as many units as fit
  double s = 1.0;                  // dense branch when delta(H) >= ln^s n
  double K = 4.0;                  // small-order branch when n < K kappa^2
  long long bad_threshold = 64;    // a unit is bad above this many used interior vertices
};

struct RunConfig {
  RunMode mode = RunMode::Desk;
  KappaRule kappa_rule = KappaRule::Sqrt;
  double epsilon1 = 0.5;
  double epsilon2 = 1e-6;
  std::optional<DeskOverrides> overrides;
  std::uint64_t seed = 0;
  int exhaustive_cap = 22;  // largest order verified exhaustively
  int k_target = 0;         // 0 maximizes k
  int ell_target = 0;       // 0 lets the pipeline choose
};

// Constants in force for one run.
struct ResolvedConfig {
  RunMode mode = RunMode::Desk;
  KappaRule kappa_rule = KappaRule::Sqrt;
  long long n = 0;
  double d = 0;
  double kappa = 0;
  long long m = 0;
  double D = 0;
  long long ell = 0;
  std::string c_prime = "1/200";
  std::string c = "min{1/16, sqrt(2) c1/4, c2/8}";
  UnitParams unit;
  UnitParams router_unit;
  long long adjuster_steps = 1;
  long long unit_count = 0;
  double s = 1;
  double K = 4;
  long long bad_threshold = 0;
  // Paper-mode values that do not fit the integer gadget parameters, kept
  // unclamped for reporting.
  long long hub_first_layer = 0;
};

// m is the smallest even integer above 80 ln^4(n / kappa^2).
long long paper_m(double n, double kappa);
double kappa_of(double d, KappaRule rule);

// Paper mode evaluates the formulas; desk mode echoes the overrides and
// throws InvalidArgument when they are missing.
ResolvedConfig derive_config(long long n, double d, const RunConfig& cfg);

struct TraceEntry {
  std::string stage;
  std::string message;
};

struct PipelineTrace {
  std::vector<TraceEntry> log;
  std::optional<ResolvedConfig> config;
  std::vector<Unit> units;          // every unit built, in host ids
  std::vector<Adjuster> adjusters;  // every adjuster used by an accepted connection
  std::vector<Adjuster> adjusters_built;  // simple adjusters built by the chosen attempt
  int connections_paper = 0;
  int connections_fallback = 0;
  int connections_failed = 0;
  int parity_checks = 0;
  int bad_units = 0;
  bool kst_transform_applied = false;
  std::optional<double> kst_bound;
  std::optional<double> kst_observed;

  void note(std::string stage, std::string message);
};

struct UnitClassification {
  std::vector<int> good;  // indices into the unit list
  std::vector<int> bad;
};

// Bad units have more than `threshold` interior vertices in `usage`.
UnitClassification classify_units(const std::vector<Unit>& units, const VertexSet& usage,
                                  long long threshold);

// Units, good/bad classification and exact-length core connections on G.
// `d` is the minimum-degree scale used to derive the constants (delta(G)
// when absent).
Outcome<SubdivisionCertificate> find_balanced_subdivision(const Graph& g, const RunConfig& cfg,
                                                          PipelineTrace& trace,
                                                          std::optional<double> d = std::nullopt);

enum class PipelineKind { Subdivision, DenseFallback, SparseRegime, Failed };
const char* to_string(PipelineKind k);

struct PipelineResult {
  PipelineKind kind = PipelineKind::Failed;
  std::optional<SubdivisionCertificate> certificate;  // always verified against the input
  std::optional<Failure> failure;
  PipelineTrace trace;
};

// Bipartite expander extraction followed by the dense, small-order or
// sparse branch.
PipelineResult top_level(const Graph& g, const RunConfig& cfg);

}  // namespace tksub
