#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pdiv/job.hpp"

namespace {

struct Flags {
  std::string file;
  std::string pipeline;
  std::string output;
  int max_iterations = 64;
  int threads = 1;
  bool verify = false;
};

int emit(const pdiv::JobResult& r, const std::string& output) {
  if (output.empty()) {
    std::cout << r.report;
    return r.exit_code;
  }
  std::ofstream rep(output), gen(output + ".gens");
  if (!rep || !gen) {
    std::cerr << "pdivgen: cannot write " << output << "\n";
    return 3;
  }
  rep << r.report;
  gen << r.generators;
  return r.exit_code;
}

int run(const Flags& f, pdiv::JobDescription job, const std::string& where) {
  try {
    if (!f.pipeline.empty()) {
      const auto p = pdiv::parse_pipeline(f.pipeline);
      if (!p) {
        std::cerr << "pdivgen: unknown pipeline '" << f.pipeline << "'\n";
        return 2;
      }
      job.pipeline = *p;
    }
    pdiv::RunOptions opt;
    opt.engine.max_iterations = f.max_iterations;
    opt.engine.threads = f.threads;
    opt.verify = f.verify;
    return emit(pdiv::run_job(job, opt), f.output.empty() ? job.output : f.output);
  } catch (const pdiv::Error& e) {
    std::cerr << where << ": " << pdiv::to_string(e.kind()) << ": " << e.what() << "\n";
    return pdiv::exit_code(e.kind());
  }
}

std::optional<pdiv::JobDescription> load(const std::string& path, int& code) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "pdivgen: cannot read " << path << "\n";
    code = 2;
    return std::nullopt;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return pdiv::parse_job(ss.str());
  } catch (const pdiv::Error& e) {
    std::cerr << path << ":" << e.what() << "\n";
    code = pdiv::exit_code(e.kind());
    return std::nullopt;
  }
}

void engine_flags(CLI::App* app, Flags& f) {
  app->add_option("--output,-o", f.output, "write the report here and the generators to OUTPUT.gens");
  app->add_option("--max-iterations", f.max_iterations, "cap on the multiple k searched per ray")->check(CLI::PositiveNumber);
  app->add_option("--threads", f.threads, "worker threads for per-ray sections")->check(CLI::PositiveNumber);
  app->add_flag("--verify", f.verify, "run validity and membership checks on the result");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generators of multigraded section algebras of polyhedral divisors"};
  app.require_subcommand(1);
  Flags f;

  auto* run_cmd = app.add_subcommand("run", "run the pipeline of a job file");
  run_cmd->add_option("file", f.file, "job file")->required();
  run_cmd->add_option("--pipeline,-p", f.pipeline, "general | torus | cox-s5 | hilbert | subdivide | eval");
  engine_flags(run_cmd, f);

  auto* cox_cmd = app.add_subcommand("cox-s5", "Cox ring of the degree-5 del Pezzo surface");
  engine_flags(cox_cmd, f);

  auto* fmt_cmd = app.add_subcommand("format", "print a job file in canonical form");
  fmt_cmd->add_option("file", f.file, "job file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  int code = 0;
  if (*run_cmd) {
    auto job = load(f.file, code);
    return job ? run(f, std::move(*job), f.file) : code;
  }
  if (*cox_cmd) {
    pdiv::JobDescription job;
    job.pipeline = pdiv::Pipeline::CoxS5;
    return run(f, std::move(job), "cox-s5");
  }
  auto job = load(f.file, code);
  if (!job) return code;
  std::cout << pdiv::write_job(*job);
  return 0;
}
