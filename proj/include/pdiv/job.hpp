#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdiv/cox.hpp"
#include "pdiv/error.hpp"
#include "pdiv/torus.hpp"

namespace pdiv {

enum class Pipeline { General, Torus, CoxS5, Hilbert, Subdivide, Eval };
const char* to_string(Pipeline p);
std::optional<Pipeline> parse_pipeline(const std::string& name);

struct VarietySpec {
  std::string backend;  ///< projective | blowup_p2 | point
  std::vector<std::string> coordinates;
  std::vector<std::pair<std::string, Poly>> primes;
  std::vector<QVector> points;  ///< blowup_p2 only

  friend bool operator==(const VarietySpec&, const VarietySpec&) = default;
};

struct CoefficientSpec {
  std::string name;
  std::vector<QVector> vertices;
  std::optional<std::vector<IntVector>> tail;  ///< rays; defaults to dual(omega)

  friend bool operator==(const CoefficientSpec&, const CoefficientSpec&) = default;
};

struct TorusSpec {
  std::size_t rank = 0;
  std::vector<IntVector> rays;
  std::vector<std::pair<std::string, QVector>> vertical;

  friend bool operator==(const TorusSpec&, const TorusSpec&) = default;
};

/// Cone for the hilbert pipeline, by rays or by inequalities <a, x> >= 0.
struct ConeSpec {
  std::vector<IntVector> rays;
  std::vector<IntVector> inequalities;

  friend bool operator==(const ConeSpec&, const ConeSpec&) = default;
};

/// A job file. Sections: [job], [variety], [pdivisor], [coefficient NAME],
/// [torus], [cone]. Lines are `key = value` or a matrix block `key:` with one
/// row per line closed by `end`. `#` starts a comment. Numbers are exact
/// integers or rationals a/b.
struct JobDescription {
  Pipeline pipeline = Pipeline::General;
  std::string output;
  std::optional<QVector> weight;  ///< eval pipeline
  std::optional<VarietySpec> variety;
  std::vector<IntVector> omega;  ///< rays of the weight cone
  std::vector<CoefficientSpec> coefficients;
  std::optional<TorusSpec> torus;
  std::optional<ConeSpec> cone;  ///< hilbert pipeline; defaults to omega

  friend bool operator==(const JobDescription&, const JobDescription&) = default;
};

/// Throws Error(Parse) with "line:column: message", or Error(Semantic) for
/// well-formed but meaningless input such as an unknown backend.
JobDescription parse_job(const std::string& text);
/// Canonical text; parse_job(write_job(j)) == j.
std::string write_job(const JobDescription& job);

std::shared_ptr<const Variety> build_variety(const VarietySpec& spec);
PDivisor build_pdivisor(const JobDescription& job);
DivisorialFanRecord build_fan(const TorusSpec& spec);

struct RunOptions {
  EngineOptions engine;
  bool verify = false;
};

struct JobResult {
  int exit_code = 0;
  std::string report;
  std::string generators;  ///< one element per line, tab-separated
};

/// Runs the pipeline. Library errors are rethrown with the stage prefixed.
JobResult run_job(const JobDescription& job, const RunOptions& opt = {});

/// 2 parse, 3 semantic and argument errors, 4 iteration cap, 5 unsupported.
int exit_code(ErrorKind kind);

}  // namespace pdiv
