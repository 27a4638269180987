#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "pdiv/job.hpp"
#include "support.hpp"

using namespace pdiv;
using namespace testing_support;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string job_file(const std::string& name) { return slurp(std::filesystem::path(PDIV_JOBS_DIR) / name); }
std::string data_file(const std::string& name) { return slurp(std::filesystem::path(PDIV_TEST_DATA_DIR) / name); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const std::string kMinimal = "[job]\npipeline = hilbert\n\n[cone]\nrays:\n  1 0\n  1 2\nend\n";

}  // namespace

TEST(Parse, ShippedP2Job) {
  const JobDescription j = parse_job(job_file("p2.pdiv"));
  EXPECT_EQ(j.pipeline, Pipeline::General);
  ASSERT_TRUE(j.variety);
  EXPECT_EQ(j.variety->backend, "projective");
  EXPECT_EQ(j.variety->coordinates, (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_EQ(j.omega, (std::vector<IntVector>{iv({-1, 1}), iv({1, 1})}));
  ASSERT_EQ(j.coefficients.size(), 2u);
  EXPECT_EQ(j.coefficients[0].vertices, std::vector<QVector>{qv({0, Rat(1, 2)})});
  ASSERT_TRUE(j.torus);
  EXPECT_EQ(j.torus->rays.size(), 3u);
}

TEST(Parse, EvalPrintsTheValueAtTheMiddleRay) {
  const JobResult r = run_job(parse_job(job_file("p2-eval.pdiv")));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.report.find("D(0,1) = 1/2 D + 1 E"), std::string::npos) << r.report;
}

TEST(Parse, EmptyFileIsASyntaxErrorAtOneOne) {
  const std::string m = message_of([] { parse_job(data_file("empty.pdiv")); });
  EXPECT_EQ(m.rfind("1:1: syntax error", 0), 0u) << m;
  EXPECT_EQ(kind_of([] { parse_job(""); }), ErrorKind::Parse);
}

TEST(Parse, WrongTailNamesTheDivisor) {
  const JobDescription j = parse_job(data_file("bad-tail.pdiv"));
  EXPECT_EQ(kind_of([&] { build_pdivisor(j); }), ErrorKind::Semantic);
  EXPECT_NE(message_of([&] { build_pdivisor(j); }).find("'E'"), std::string::npos);
}

TEST(Parse, UnknownBackendIsSemantic) {
  const std::string text = "[job]\npipeline = eval\n[variety]\nbackend = grassmannian\n";
  EXPECT_EQ(kind_of([&] { parse_job(text); }), ErrorKind::Semantic);
  EXPECT_EQ(message_of([&] { parse_job(text); }).rfind("4:11:", 0), 0u);
}

TEST(Parse, BadNumberLocated) {
  const std::string text = "[job]\npipeline = hilbert\n[cone]\nrays:\n  1 0\n  1 2/x\nend\n";
  EXPECT_EQ(message_of([&] { parse_job(text); }).rfind("6:5: syntax error", 0), 0u) << message_of([&] { parse_job(text); });
}

TEST(Parse, Diagnostics) {
  EXPECT_EQ(kind_of([] { parse_job("pipeline = general\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_job("[job]\npipeline = sideways\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_job("[job]\npipeline = hilbert\n[cone]\nrays:\n 1 0\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_job("[job]\npipeline = hilbert\n[cone]\nrays:\n 1 0\n 1\nend\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_job("[job]\npipeline = hilbert\n[job]\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_job("[job]\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_job("[job]\npipeline = hilbert\nspeed = 3\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_job("[job]\npipeline = eval\nweight = 1/0\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_job("[job]\npipeline = eval\n[pdivisor]\nomega:\n 1/2 1\nend\n"); }), ErrorKind::Parse);
}

TEST(Parse, CommentsAndBlankLines) {
  const std::string text = "# header\n\n[job]   # trailing\npipeline = hilbert # here too\n\n[cone]\nrays:\n  1 0\n\n  1 2\nend\n";
  EXPECT_EQ(parse_job(text), parse_job(kMinimal));
}

TEST(RoundTrip, CanonicalFilesAreFixedPoints) {
  EXPECT_EQ(write_job(parse_job(kMinimal)), kMinimal);
  for (const auto* name : {"p2.pdiv", "p2-eval.pdiv", "sigma-tilde.pdiv", "cox-s5.pdiv"}) {
    const std::string canonical = write_job(parse_job(job_file(name)));
    EXPECT_EQ(write_job(parse_job(canonical)), canonical) << name;
    EXPECT_EQ(parse_job(canonical), parse_job(job_file(name))) << name;
  }
}

TEST(RoundTrip, RandomDescriptions) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> small(-6, 6), den(1, 5), len(1, 4);
  const std::vector<std::string> names{"x", "y", "z"};
  for (int t = 0; t < 20; ++t) {
    JobDescription j;
    j.pipeline = static_cast<Pipeline>(t % 6);
    if (t % 3 == 0) j.output = "out" + std::to_string(t) + ".txt";
    const std::size_t n = 2 + t % 2;
    auto qrow = [&] {
      QVector v;
      for (std::size_t i = 0; i < n; ++i) {
        Rat q(small(rng), den(rng));
        q.canonicalize();
        v.push_back(q);
      }
      return v;
    };
    auto irow = [&] {
      IntVector v;
      for (std::size_t i = 0; i < n; ++i) v.emplace_back(small(rng));
      return v;
    };
    if (t % 2 == 0) j.weight = qrow();
    VarietySpec v;
    v.backend = t % 4 == 0 ? "blowup_p2" : "projective";
    v.coordinates = names;
    v.primes.emplace_back("D", parse_poly("x*y - " + std::to_string(t) + "/3*z^2", names));
    if (t % 4 == 0) v.points = {qv({1, 0, 0}), qv({0, Rat(1, 2), 1})};
    j.variety = v;
    for (int k = len(rng); k > 0; --k) j.omega.push_back(irow());
    for (int c = 0; c < 2; ++c) {
      CoefficientSpec cs{"C" + std::to_string(c), {}, std::nullopt};
      for (int k = len(rng); k > 0; --k) cs.vertices.push_back(qrow());
      if (c == 1) cs.tail = std::vector<IntVector>{irow()};
      j.coefficients.push_back(cs);
    }
    if (t % 5 == 0) j.torus = TorusSpec{n, {irow(), irow()}, {{"P", qrow()}}};
    if (t % 7 == 0) j.cone = ConeSpec{{irow()}, {irow(), irow()}};
    const std::string text = write_job(j);
    EXPECT_EQ(parse_job(text), j) << text;
    EXPECT_EQ(write_job(parse_job(text)), text);
  }
}

TEST(Run, HilbertPipelineOnTheUpgradedCone) {
  const JobResult r = run_job(parse_job(job_file("sigma-tilde.pdiv")));
  std::set<IntVector> got;
  std::istringstream is(r.generators);
  for (std::string line; std::getline(is, line);) {
    IntVector v;
    std::istringstream ls(line);
    for (long x; ls >> x;) v.emplace_back(x);
    got.insert(v);
  }
  const auto golden = golden_sigma_tilde_dual_basis();
  EXPECT_EQ(got, std::set<IntVector>(golden.begin(), golden.end()));
}

TEST(Run, TorusReportCountsBothCells) {
  JobDescription j = parse_job(job_file("p2.pdiv"));
  j.pipeline = Pipeline::Torus;
  const JobResult t = run_job(j);
  const std::size_t want = 2 * golden_sigma_tilde_dual_basis().size();
  EXPECT_NE(t.report.find(std::to_string(want) + " generators"), std::string::npos) << t.report;
  EXPECT_NE(t.report.find("(-2,2) (-1,1) (-1,2) (0,1) (0,2) (1,1) (1,2) (2,2)"), std::string::npos);
}

TEST(Run, CoxReport) {
  JobDescription j;
  j.pipeline = Pipeline::CoxS5;
  const JobResult r = run_job(j);
  EXPECT_EQ(r.exit_code, 0);
  for (const auto* s : {"241 subcones", "160 rays", "23 rays", "10 generators", "minors certificate: PASS"})
    EXPECT_NE(r.report.find(s), std::string::npos) << s;
}

TEST(Run, ReportsAreByteIdentical) {
  JobDescription j = parse_job(job_file("p2.pdiv"));
  RunOptions opt;
  const JobResult a = run_job(j, opt);
  opt.engine.threads = 2;
  const JobResult b = run_job(j, opt);
  EXPECT_EQ(a.report, b.report);
  EXPECT_EQ(a.generators, b.generators);
}

TEST(Run, VerifyAppendsChecks) {
  RunOptions opt;
  opt.verify = true;
  const JobResult r = run_job(parse_job(job_file("p2-eval.pdiv")), opt);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.report.find("PASS  weight cone full-dimensional"), std::string::npos) << r.report;
}

TEST(Run, StageNamedInErrors) {
  JobDescription j = parse_job(job_file("p2.pdiv"));
  RunOptions opt;
  opt.engine.max_iterations = 1;
  EXPECT_EQ(kind_of([&] { run_job(j, opt); }), ErrorKind::IterationLimitExceeded);
  EXPECT_NE(message_of([&] { run_job(j, opt); }).find("general pipeline, generators:"), std::string::npos);
}

TEST(Run, VerticalMarkersAreUnsupported) {
  const JobDescription j = parse_job(data_file("vertical.pdiv"));
  EXPECT_EQ(kind_of([&] { run_job(j); }), ErrorKind::UnsupportedBase);
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(exit_code(ErrorKind::Parse), 2);
  EXPECT_EQ(exit_code(ErrorKind::Semantic), 3);
  EXPECT_EQ(exit_code(ErrorKind::WeightOutsideCone), 3);
  EXPECT_EQ(exit_code(ErrorKind::IterationLimitExceeded), 4);
  EXPECT_EQ(exit_code(ErrorKind::UnsupportedBackend), 5);
  EXPECT_EQ(exit_code(ErrorKind::UnsupportedBase), 5);
}
