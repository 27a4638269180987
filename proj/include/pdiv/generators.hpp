#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdiv/pdivisor.hpp"

namespace pdiv {

/// s * chi^u.
struct GradedElement {
  FunctionFieldElement section;
  IntVector weight;
};

enum class NormalizationStatus { Normal, SaturatedToric, ExportedForNormalization };
const char* to_string(NormalizationStatus s);

struct EngineOptions {
  int max_iterations = 64;
  /// Weights whose graded pieces decide whether A[L] is already normal,
  /// given as sums of at most this many Hilbert basis elements of omega.
  int normality_probe_depth = 3;
  /// Upper bound on worker threads for per-ray section computations.
  int threads = 1;
};

struct RayData {
  IntVector ray;
  int k = 0;
  SectionBasis basis;  ///< sections of D(k * ray)
};

/// Smallest k with D(k * ray) integral and base point free.
RayData find_k_rho(const PDivisor& d, const IntVector& ray, int max_iterations = 64);

/// find_k_rho for each ray, in order, spread over opt.threads workers.
std::vector<RayData> ray_data(const PDivisor& d, const std::vector<IntVector>& rays, const EngineOptions& opt = {});

/// Linear span of the products of a fixed list of graded elements, one
/// graded piece at a time. Pieces are numerator spaces of the round-down of
/// D(u) and are built by dynamic programming over u - w_a.
class GradedSpan {
 public:
  GradedSpan(const PDivisor& d, const std::vector<GradedElement>& generators);

  std::size_t dimension(const IntVector& u);
  /// dim H^0 of the round-down of D(u).
  std::size_t full_dimension(const IntVector& u);
  bool contains(const GradedElement& e);
  bool contains(const FunctionFieldElement& s, const IntVector& u);

  /// Numerator of s relative to the round-down of D(u); throws Semantic if s
  /// is not a section there.
  Poly numerator(const FunctionFieldElement& s, const IntVector& u) const;

 private:
  struct Piece {
    int degree = 0;
    std::vector<Exponents> monomials;
    IncrementalEchelon echelon;
    std::vector<Poly> basis;
    bool complete = false;
  };
  Piece& piece(const IntVector& u);

  const PDivisor* d_;
  std::vector<IntVector> weights_;
  std::vector<Poly> numerators_;
  std::map<IntVector, Piece> pieces_;
  std::map<IntVector, std::size_t> full_;
};

/// True iff s lies in the span of H^0 of the round-down of D(u).
bool is_section(const PDivisor& d, const GradedElement& e);

/// Steps 1-6: the sections at k_rho * rho for every distinct ray of the
/// linearity subdivision, cells in order.
std::vector<GradedElement> zariski_pool(const PDivisor& d, const LinearityDomain& lin,
                                        std::vector<RayData>& rays, const EngineOptions& opt = {});

/// Steps 7-11 with Hermite pruning. Returns the added elements.
std::vector<GradedElement> weight_lattice_completion(const PDivisor& d, const std::vector<GradedElement>& l,
                                                     const EngineOptions& opt = {});

/// Lattice basis of M inside omega used by the completion step.
std::vector<IntVector> completion_basis(const QCone& omega);

struct QuotientFieldResult {
  std::vector<GradedElement> added;
  /// One line per coordinate ratio: "x/z = g3^1 * g7^-1" with 1-based indices.
  std::vector<std::string> witness;
  bool complete = false;
};

/// Step 12: coordinate ratios of the base as degree-zero products of
/// elements whose sections factor over coordinates and defining forms.
QuotientFieldResult quotient_field_complete(const PDivisor& d, const std::vector<GradedElement>& l,
                                            const EngineOptions& opt = {});

/// Drops duplicates and every element lying in the graded span of the others.
std::vector<GradedElement> reduce_generators(const PDivisor& d, std::vector<GradedElement> l);

struct GeneratorSet {
  std::vector<GradedElement> elements;
  NormalizationStatus status = NormalizationStatus::ExportedForNormalization;
  std::vector<GradedElement> added;  ///< saturation additions
  /// Weight where the span of products falls short of H^0, if one was found.
  std::optional<IntVector> deficient_weight;
  std::string presentation;  ///< nonempty when exported
};

/// Step 13. Toric inputs (sections are Laurent monomials in the coordinates)
/// are saturated with a Hilbert basis computation. Otherwise graded pieces at
/// probe weights are compared with H^0; agreement gives Normal, a shortfall
/// exports a presentation.
GeneratorSet normalize_or_export(const PDivisor& d, std::vector<GradedElement> l, const EngineOptions& opt = {});

/// Presentation text: generators with weights and sections, then the binomial
/// relations among generators whose sections factor over the atoms.
std::string presentation(const Variety& y, const std::vector<GradedElement>& l);

struct GeneralRun {
  LinearityDomain linearity;
  std::vector<RayData> rays;
  std::size_t pool_size = 0;
  std::vector<GradedElement> completion;
  QuotientFieldResult quotient_field;
  std::size_t raw_size = 0;
  std::size_t pruned_size = 0;
  GeneratorSet result;
};

GeneralRun run_general(const PDivisor& d, const EngineOptions& opt = {});

/// Canonical sort: weight, then numerator and denominator.
void canonical_sort(std::vector<GradedElement>& l);
std::string to_string(const GradedElement& e, const Variety& y);

}  // namespace pdiv
