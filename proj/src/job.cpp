#include "pdiv/job.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace pdiv {

namespace {

struct Cursor {
  std::size_t line = 1;
  std::size_t col = 1;
};

[[noreturn]] void fail(const Cursor& at, const std::string& msg, ErrorKind kind = ErrorKind::Parse) {
  throw Error(kind, std::to_string(at.line) + ":" + std::to_string(at.col) + ": " +
                        (kind == ErrorKind::Parse ? "syntax error: " : "") + msg);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::size_t indent(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  return b == std::string::npos ? 0 : b;
}

// Whitespace-separated words with their 1-based columns.
std::vector<std::pair<std::string, std::size_t>> words(const std::string& s, std::size_t col0) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t b = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > b) out.emplace_back(s.substr(b, i - b), col0 + b);
  }
  return out;
}

Rat parse_rat(const std::string& w, const Cursor& at) {
  std::size_t i = 0;
  if (i < w.size() && (w[i] == '-' || w[i] == '+')) ++i;
  const std::size_t d0 = i;
  while (i < w.size() && std::isdigit(static_cast<unsigned char>(w[i]))) ++i;
  bool ok = i > d0;
  if (ok && i < w.size() && w[i] == '/') {
    const std::size_t d1 = ++i;
    while (i < w.size() && std::isdigit(static_cast<unsigned char>(w[i]))) ++i;
    ok = i > d1;
  }
  if (!ok || i != w.size()) fail(at, "expected an exact rational, got '" + w + "'");
  Rat q(w[0] == '+' ? w.substr(1) : w);
  if (q.get_den() == 0) fail(at, "zero denominator in '" + w + "'");
  q.canonicalize();
  return q;
}

QVector parse_row(const std::string& text, Cursor at) {
  QVector out;
  for (const auto& [w, c] : words(text, at.col)) {
    at.col = c;
    out.push_back(parse_rat(w, at));
  }
  return out;
}

IntVector parse_int_row(const std::string& text, Cursor at) {
  IntVector out;
  for (const auto& [w, c] : words(text, at.col)) {
    at.col = c;
    const Rat q = parse_rat(w, at);
    if (q.get_den() != 1) fail(at, "expected an integer, got '" + w + "'");
    out.push_back(q.get_num());
  }
  return out;
}

std::string row_string(const QVector& v) {
  std::string out;
  for (const auto& x : v) out += (out.empty() ? "" : " ") + to_string(x);
  return out;
}

std::string row_string(const IntVector& v) {
  std::string out;
  for (const auto& x : v) out += (out.empty() ? "" : " ") + x.get_str();
  return out;
}

struct Block {
  Cursor at;
  std::vector<std::pair<Cursor, std::string>> rows;
};

template <class Row, class F>
std::vector<Row> rows_of(const Block& b, F parse) {
  std::vector<Row> out;
  for (const auto& [at, text] : b.rows) {
    Row r = parse(text, at);
    if (!out.empty() && r.size() != out.front().size()) fail(at, "row length differs from the first row");
    out.push_back(std::move(r));
  }
  return out;
}

const std::map<std::string, Pipeline> kPipelines = {
    {"general", Pipeline::General}, {"torus", Pipeline::Torus},         {"cox-s5", Pipeline::CoxS5},
    {"hilbert", Pipeline::Hilbert}, {"subdivide", Pipeline::Subdivide}, {"eval", Pipeline::Eval},
};

}  // namespace

const char* to_string(Pipeline p) {
  for (const auto& [name, q] : kPipelines)
    if (q == p) return name.c_str();
  return "?";
}

std::optional<Pipeline> parse_pipeline(const std::string& name) {
  const auto it = kPipelines.find(name);
  if (it == kPipelines.end()) return std::nullopt;
  return it->second;
}

JobDescription parse_job(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) lines.push_back(l.substr(0, l.find('#')));
  }
  JobDescription job;
  std::string section;
  std::set<std::string> seen;
  bool have_job = false, have_pipeline = false;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string raw = lines[i];
    const std::string t = trim(raw);
    if (t.empty()) continue;
    Cursor at{i + 1, indent(raw) + 1};

    if (t.front() == '[') {
      if (t.back() != ']') fail(at, "unterminated section header");
      const auto parts = words(t.substr(1, t.size() - 2), at.col + 1);
      if (parts.empty()) fail(at, "empty section header");
      section = parts[0].first;
      const std::string arg = parts.size() > 1 ? parts[1].first : "";
      if (parts.size() > 2) fail({at.line, parts[2].second}, "unexpected word in section header");
      static const std::set<std::string> known{"job", "variety", "pdivisor", "coefficient", "torus", "cone"};
      if (!known.count(section)) fail(at, "unknown section [" + section + "]");
      if ((section == "coefficient") != !arg.empty())
        fail(at, section == "coefficient" ? "[coefficient] needs a prime divisor name" : "unexpected section argument");
      const std::string key = section + " " + arg;
      if (!seen.insert(key).second) fail(at, "duplicate section [" + trim(key) + "]");
      if (section == "job") have_job = true;
      if (section == "variety") job.variety = VarietySpec{};
      if (section == "torus") job.torus = TorusSpec{};
      if (section == "cone") job.cone = ConeSpec{};
      if (section == "coefficient") job.coefficients.push_back({arg, {}, std::nullopt});
      continue;
    }
    if (section.empty()) fail(at, "expected a section header");

    if (t.back() == ':') {
      Block b{at, {}};
      const std::string key = trim(t.substr(0, t.size() - 1));
      bool closed = false;
      for (++i; i < lines.size(); ++i) {
        const std::string r = trim(lines[i]);
        if (r.empty()) continue;
        if (r == "end") {
          closed = true;
          break;
        }
        b.rows.push_back({Cursor{i + 1, indent(lines[i]) + 1}, lines[i].substr(indent(lines[i]))});
      }
      if (!closed) fail(at, "block '" + key + "' is missing 'end'");
      if (section == "variety" && key == "points") {
        job.variety->points = rows_of<QVector>(b, parse_row);
      } else if (section == "pdivisor" && key == "omega") {
        job.omega = rows_of<IntVector>(b, parse_int_row);
      } else if (section == "coefficient" && key == "vertices") {
        job.coefficients.back().vertices = rows_of<QVector>(b, parse_row);
      } else if (section == "coefficient" && key == "tail") {
        job.coefficients.back().tail = rows_of<IntVector>(b, parse_int_row);
      } else if (section == "torus" && key == "rays") {
        job.torus->rays = rows_of<IntVector>(b, parse_int_row);
      } else if (section == "cone" && key == "rays") {
        job.cone->rays = rows_of<IntVector>(b, parse_int_row);
      } else if (section == "cone" && key == "inequalities") {
        job.cone->inequalities = rows_of<IntVector>(b, parse_int_row);
      } else {
        fail(at, "unknown block '" + key + "' in [" + section + "]");
      }
      continue;
    }

    const auto eq = t.find('=');
    if (eq == std::string::npos) fail(at, "expected 'key = value' or 'key:'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const std::size_t req = raw.find('='), vb = raw.find_first_not_of(" \t", req + 1);
    const Cursor vat{at.line, (vb == std::string::npos ? req + 1 : vb) + 1};
    const auto kw = words(key, at.col);

    if (section == "job" && key == "pipeline") {
      const auto p = parse_pipeline(value);
      if (!p) fail(vat, "unknown pipeline '" + value + "'");
      job.pipeline = *p;
      have_pipeline = true;
    } else if (section == "job" && key == "output") {
      job.output = value;
    } else if (section == "job" && key == "weight") {
      job.weight = parse_row(value, vat);
    } else if (section == "variety" && key == "backend") {
      if (value != "projective" && value != "blowup_p2" && value != "point")
        fail(vat, "unknown backend '" + value + "'", ErrorKind::Semantic);
      job.variety->backend = value;
    } else if (section == "variety" && key == "coordinates") {
      job.variety->coordinates.clear();
      for (const auto& [w, c] : words(value, vat.col)) job.variety->coordinates.push_back(w);
    } else if (section == "variety" && kw.size() == 2 && kw[0].first == "prime") {
      if (job.variety->coordinates.empty()) fail(at, "coordinates must precede primes");
      try {
        job.variety->primes.emplace_back(kw[1].first, parse_poly(value, job.variety->coordinates));
      } catch (const Error& e) {
        fail(vat, e.what());
      }
    } else if (section == "torus" && key == "rank") {
      const IntVector r = parse_int_row(value, vat);
      if (r.size() != 1 || r[0] < 0) fail(vat, "rank must be one nonnegative integer");
      job.torus->rank = r[0].get_ui();
    } else if (section == "torus" && kw.size() == 2 && kw[0].first == "vertical") {
      job.torus->vertical.emplace_back(kw[1].first, parse_row(value, vat));
    } else {
      fail(at, "unknown key '" + key + "' in [" + section + "]");
    }
  }
  if (!have_job) fail({1, 1}, lines.empty() ? "empty job file" : "missing [job] section");
  if (!have_pipeline) fail({1, 1}, "[job] has no pipeline");
  return job;
}

std::string write_job(const JobDescription& job) {
  std::ostringstream os;
  os << "[job]\npipeline = " << to_string(job.pipeline) << "\n";
  if (!job.output.empty()) os << "output = " << job.output << "\n";
  if (job.weight) os << "weight = " << row_string(*job.weight) << "\n";
  auto block = [&](const std::string& key, const auto& rows) {
    os << key << ":\n";
    for (const auto& r : rows) os << "  " << row_string(r) << "\n";
    os << "end\n";
  };
  if (job.variety) {
    const auto& v = *job.variety;
    os << "\n[variety]\nbackend = " << v.backend << "\n";
    if (!v.coordinates.empty()) {
      os << "coordinates =";
      for (const auto& c : v.coordinates) os << " " << c;
      os << "\n";
    }
    for (const auto& [name, f] : v.primes) os << "prime " << name << " = " << f.to_string(v.coordinates) << "\n";
    if (!v.points.empty()) block("points", v.points);
  }
  if (!job.omega.empty()) {
    os << "\n[pdivisor]\n";
    block("omega", job.omega);
  }
  for (const auto& c : job.coefficients) {
    os << "\n[coefficient " << c.name << "]\n";
    block("vertices", c.vertices);
    if (c.tail) block("tail", *c.tail);
  }
  if (job.torus) {
    os << "\n[torus]\nrank = " << job.torus->rank << "\n";
    block("rays", job.torus->rays);
    for (const auto& [name, v] : job.torus->vertical) os << "vertical " << name << " = " << row_string(v) << "\n";
  }
  if (job.cone) {
    os << "\n[cone]\n";
    if (!job.cone->rays.empty()) block("rays", job.cone->rays);
    if (!job.cone->inequalities.empty()) block("inequalities", job.cone->inequalities);
  }
  return os.str();
}

std::shared_ptr<const Variety> build_variety(const VarietySpec& spec) {
  if (spec.backend == "projective") return std::make_shared<ProjectiveSpace>(spec.coordinates, spec.primes);
  if (spec.backend == "blowup_p2") return std::make_shared<BlowupOfP2>(spec.coordinates, spec.points, spec.primes);
  if (spec.backend == "point") return std::make_shared<PointBase>();
  throw Error(ErrorKind::Semantic, "unknown backend '" + spec.backend + "'");
}

PDivisor build_pdivisor(const JobDescription& job) {
  if (!job.variety) throw Error(ErrorKind::Semantic, "job has no [variety] section");
  if (job.omega.empty()) throw Error(ErrorKind::Semantic, "job has no weight cone ([pdivisor] omega)");
  const std::size_t n = job.omega.front().size();
  const QCone omega = QCone::from_generators(n, job.omega);
  const QCone tail = dual_cone(omega);
  std::map<std::string, TailedPolyhedron> coeffs;
  for (const auto& c : job.coefficients) {
    if (c.vertices.empty()) throw Error(ErrorKind::Semantic, "coefficient '" + c.name + "' has no vertices");
    for (const auto& v : c.vertices)
      if (v.size() != n) throw Error(ErrorKind::DimensionMismatch, "coefficient '" + c.name + "' has the wrong dimension");
    const QCone t = c.tail ? QCone::from_generators(n, *c.tail) : tail;
    if (!coeffs.emplace(c.name, TailedPolyhedron(c.vertices, t)).second)
      throw Error(ErrorKind::Semantic, "coefficient '" + c.name + "' given twice");
  }
  return PDivisor(omega, std::move(coeffs), build_variety(*job.variety));
}

DivisorialFanRecord build_fan(const TorusSpec& spec) {
  DivisorialFanRecord f;
  f.rank = spec.rank;
  f.rays = spec.rays;
  f.vertical = spec.vertical;
  return f;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return 2;
    case ErrorKind::IterationLimitExceeded: return 4;
    case ErrorKind::UnsupportedBackend:
    case ErrorKind::UnsupportedBase: return 5;
    default: return 3;
  }
}

namespace {

std::string rays_string(const std::vector<IntVector>& rays) {
  std::string out;
  for (const auto& r : rays) out += (out.empty() ? "" : " ") + to_string(r);
  return out;
}

std::string element_line(const GradedElement& e, const Variety& y) {
  return to_string(e.weight) + "\t" + e.section.simplified(y.atoms()).to_string(y.coordinates());
}

// Appends verification lines; returns false if something failed.
bool verify_divisor(const PDivisor& d, std::ostringstream& os) {
  const ValidationReport r = validate(d);
  os << "\nverification:\n" << r.to_string();
  return r.ok();
}

bool verify_sections(const PDivisor& d, const std::vector<GradedElement>& l, std::ostringstream& os) {
  std::size_t bad = 0;
  for (const auto& e : l)
    if (!is_section(d, e)) ++bad;
  os << (bad == 0 ? "PASS" : "FAIL") << "  section membership  " << l.size() - bad << "/" << l.size() << "\n";
  return bad == 0;
}

void report_general(const PDivisor& d, const RunOptions& opt, std::ostringstream& os, std::ostringstream& gens,
                    bool& ok, std::string& stage) {
  const Variety& y = d.variety();
  stage = "generators";
  const GeneralRun run = run_general(d, opt.engine);
  const auto& sub = run.linearity.subdivision;
  os << "linearity subdivision: " << sub.cells.size() << " cells, " << sub.rays().size() << " rays\n";
  for (std::size_t i = 0; i < sub.cells.size(); ++i) os << "  cell " << i + 1 << ": " << rays_string(sub.cells[i].rays()) << "\n";
  for (const auto& r : run.rays)
    os << "ray " << to_string(r.ray) << ": k = " << r.k << ", " << r.basis.size() << " sections\n";
  os << "section pool: " << run.pool_size << " elements\n";
  os << "weight-lattice completion: " << run.completion.size() << " added\n";
  for (const auto& e : run.completion) os << "  " << to_string(e, y) << "\n";
  os << "quotient field: " << (run.quotient_field.complete ? "complete" : "incomplete") << ", "
     << run.quotient_field.added.size() << " added\n";
  for (const auto& w : run.quotient_field.witness) os << "  " << w << "\n";
  os << "collected " << run.raw_size << " generators, " << run.pruned_size << " after pruning\n";
  os << "normalization: " << to_string(run.result.status) << ", " << run.result.added.size() << " additions\n";
  if (run.result.deficient_weight) os << "deficient weight: " << to_string(*run.result.deficient_weight) << "\n";
  os << run.result.elements.size() << " generators:\n";
  for (const auto& e : run.result.elements) {
    os << "  " << to_string(e, y) << "\n";
    gens << element_line(e, y) << "\n";
  }
  if (!run.result.presentation.empty()) os << "presentation:\n" << run.result.presentation;
  if (opt.verify) {
    stage = "verify";
    ok = verify_divisor(d, os) && ok;
    ok = verify_sections(d, run.result.elements, os) && ok;
  }
}

void report_torus(const JobDescription& job, const PDivisor& d, const RunOptions& opt, std::ostringstream& os,
                  std::ostringstream& gens, bool& ok, std::string& stage) {
  if (!job.torus) throw Error(ErrorKind::Semantic, "pipeline torus needs a [torus] section");
  const Variety& y = d.variety();
  stage = "torus";
  const TorusRun run = run_torus(d, build_fan(*job.torus));
  os << "unimodular cells: " << run.cells.size() << "\n";
  for (std::size_t i = 0; i < run.cells.size(); ++i) {
    const auto& c = run.cells[i];
    os << "cell " << i + 1 << ": " << rays_string(c.rep.cell_rays) << "\n";
    for (std::size_t k = 0; k < c.rep.twist.size(); ++k)
      os << "  twist at " << to_string(c.rep.cell_rays[k]) << ": "
         << c.rep.twist[k].simplified(y.atoms()).to_string(y.coordinates()) << "\n";
    os << "  sigma~ rays: " << rays_string(c.sigma_tilde.rays()) << "\n";
    os << "  Hilbert basis of the dual: " << c.hilbert.size() << " elements\n";
  }
  std::set<IntVector> degrees;
  for (const auto& e : run.elements) degrees.insert(e.weight);
  os << run.elements.size() << " generators (" << run.distinct << " distinct) in the degrees " << rays_string({degrees.begin(), degrees.end()})
     << "\n";
  for (const auto& e : run.elements) gens << element_line(e, y) << "\n";
  if (opt.verify) {
    stage = "verify";
    ok = verify_divisor(d, os) && ok;
    ok = verify_sections(d, run.elements, os) && ok;
  }
}

}  // namespace

JobResult run_job(const JobDescription& job, const RunOptions& opt) {
  std::ostringstream os, gens;
  bool ok = true;
  std::string stage = "setup";
  try {
    os << "pipeline: " << to_string(job.pipeline) << "\n";
    switch (job.pipeline) {
      case Pipeline::General: {
        const PDivisor d = build_pdivisor(job);
        report_general(d, opt, os, gens, ok, stage);
        break;
      }
      case Pipeline::Torus: {
        const PDivisor d = build_pdivisor(job);
        report_torus(job, d, opt, os, gens, ok, stage);
        break;
      }
      case Pipeline::CoxS5: {
        stage = "cox";
        const CoxSetup setup = CoxSetup::degree_five();
        const CoxRun run = run_cox(setup, opt.engine);
        os << report(run, setup);
        const auto y = setup.variety();
        for (const auto& e : run.result.elements)
          gens << element_line(e, *y) << "\t" << p_presentation(e, setup) << "\n";
        ok = run.certificate.passed;
        if (opt.verify) {
          stage = "verify";
          const PDivisor d = build_cox_pdivisor(setup);
          ok = verify_sections(d, run.result.elements, os) && ok;
        }
        break;
      }
      case Pipeline::Hilbert: {
        QCone c;
        if (job.cone && !job.cone->rays.empty() && !job.cone->inequalities.empty())
          throw Error(ErrorKind::Semantic, "[cone] takes rays or inequalities, not both");
        if (job.cone && !job.cone->inequalities.empty())
          c = QCone::from_inequalities(job.cone->inequalities.front().size(), job.cone->inequalities);
        else if (job.cone && !job.cone->rays.empty())
          c = QCone::from_generators(job.cone->rays.front().size(), job.cone->rays);
        else if (!job.omega.empty())
          c = QCone::from_generators(job.omega.front().size(), job.omega);
        else
          throw Error(ErrorKind::Semantic, "pipeline hilbert needs a [cone] or a weight cone");
        stage = "hilbert";
        const auto hb = hilbert_basis(c);
        os << "Hilbert basis: " << hb.size() << " elements\n";
        for (const auto& h : hb) {
          os << "  " << row_string(h) << "\n";
          gens << row_string(h) << "\n";
        }
        if (opt.verify) {
          stage = "verify";
          std::size_t bad = 0;
          for (const auto& h : hb) {
            if (!c.contains(h)) ++bad;
            for (const auto& g : hb)
              if (g != h && c.contains(sub(h, g))) {
                ++bad;
                break;
              }
          }
          os << "\nverification:\n" << (bad == 0 ? "PASS" : "FAIL") << "  elements in the cone and irreducible\n";
          ok = bad == 0;
        }
        break;
      }
      case Pipeline::Subdivide: {
        const PDivisor d = build_pdivisor(job);
        stage = "subdivision";
        const LinearityDomain lin = linearity_subdivision(d);
        os << "linearity subdivision: " << lin.subdivision.cells.size() << " cells, " << lin.subdivision.rays().size()
           << " rays\n";
        for (std::size_t i = 0; i < lin.subdivision.cells.size(); ++i) {
          os << "cell " << i + 1 << ": " << rays_string(lin.subdivision.cells[i].rays()) << "\n";
          for (const auto& [name, v] : lin.vertices[i]) os << "  " << name << " vertex " << to_string(v) << "\n";
        }
        if (opt.verify) ok = verify_divisor(d, os);
        break;
      }
      case Pipeline::Eval: {
        if (!job.weight) throw Error(ErrorKind::Semantic, "pipeline eval needs 'weight' in [job]");
        const PDivisor d = build_pdivisor(job);
        stage = "eval";
        os << "D" << to_string(*job.weight) << " = " << to_string(d.evaluate(*job.weight)) << "\n";
        if (opt.verify) ok = verify_divisor(d, os);
        break;
      }
    }
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(to_string(job.pipeline)) + " pipeline, " + stage + ": " + e.what());
  }
  return JobResult{ok ? 0 : 3, os.str(), gens.str()};
}

}  // namespace pdiv
