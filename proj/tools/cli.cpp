#include "plbars/json_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

using namespace plbars;
using nlohmann::json;

namespace {

// 0 ok, 2 input invalid, 3 rule conflict, 4 internal invariant breach.
int exit_code(const Error& e) {
  switch (e.code()) {
    case Errc::RuleConflict: return 3;
    case Errc::Internal: return 4;
    default: return 2;
  }
}

std::pair<long, long> parse_degree_range(const std::string& spec) {
  size_t dots = spec.find("..");
  try {
    if (dots == std::string::npos) {
      long d = std::stol(spec);
      return {d, d};
    }
    long lo = std::stol(spec.substr(0, dots));
    long hi = std::stol(spec.substr(dots + 2));
    return {lo, hi};
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "bad degree range '" + spec + "' (expected a or a..b)");
  }
}

int cmd_spectrum(const std::string& profileFile, long n, long N, const std::string& gamma2pi,
                 int lambdaSign, const std::string& degrees, std::vector<long> exteriorIndices) {
  PLProfile f = load_profile(profileFile);
  ManifoldParams p;
  p.n = n;
  p.N = N;
  p.gammaHat = parse_rat(gamma2pi);
  p.lambdaSign = lambdaSign;
  p.R = f.R;
  if (!exteriorIndices.empty()) p.exteriorMorseIndices = std::move(exteriorIndices);
  p.validate();
  f.validate();
  auto [lo, hi] = parse_degree_range(degrees);
  json arr = json::array();
  for (long d = lo; d <= hi; ++d)
    for (auto& e : spectrum_to_json(enumerate_spectrum(f, p, d))) arr.push_back(e);
  std::cout << arr.dump(2) << "\n";
  return 0;
}

json run_scenario(const Scenario& sc, const std::string& framesDir) {
  sc.validate();
  GeneratorFamily fam = build_generators(sc.params, sc.epsilon, sc.count);
  DepthBound db = boundary_depth_lower_bound(sc.coefficients, fam, sc.params, sc.epsilon);
  json out;
  out["scenario"] = scenario_to_string(sc);
  json bound;
  bound["two_pi"] = rat_str(db.bound.two_pi);
  bound["raw"] = rat_str(db.bound.raw);
  bound["symbolic"] = db.bound.str();
  bound["decimal"] = db.bound.decimal();
  out["bound"] = std::move(bound);
  if (db.certificate) {
    out["certificate"] = certificate_to_json(*db.certificate);
    if (!framesDir.empty()) {
      std::filesystem::create_directories(framesDir);
      size_t idx = 0;
      for (const LoggedEvent& le : db.certificate->eventLog) {
        Barcode bc;
        bc.degree = db.certificate->trackedDegree;
        Rat right = le.barRight;
        if (!(le.barLeft < right)) right = le.barLeft + sc.epsilon / 1000;  // inception instant
        bc.bars.push_back(Bar(le.barLeft, ExtRat(right)));
        char name[64];
        std::snprintf(name, sizeof(name), "frame_%03zu_leg%d.svg", idx, le.leg);
        std::ofstream fr(std::filesystem::path(framesDir) / name);
        fr << barcode_svg({bc});
        ++idx;
      }
      out["frames"] = idx;
    }
  }
  return out;
}

int cmd_certificate(const std::vector<std::string>& files, const std::string& framesDir,
                    unsigned jobs, std::optional<unsigned long> seed) {
  std::vector<Scenario> scenarios;
  for (const std::string& f : files) {
    Scenario sc = load_scenario(f);
    if (seed) sc.seed = *seed;
    scenarios.push_back(std::move(sc));
  }
  std::vector<json> results(scenarios.size());
  std::vector<std::optional<Error>> errors(scenarios.size());
  std::mutex mu;
  size_t next = 0;
  auto worker = [&]() {
    for (;;) {
      size_t i;
      {
        std::lock_guard<std::mutex> lk(mu);
        if (next >= scenarios.size()) return;
        i = next++;
      }
      try {
        // Frames only make sense for a single scenario run.
        results[i] = run_scenario(scenarios[i], scenarios.size() == 1 ? framesDir : "");
      } catch (const Error& e) {
        errors[i] = e;
      }
    }
  };
  unsigned nt = std::max(1u, std::min<unsigned>(jobs, (unsigned)scenarios.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < nt; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (size_t i = 0; i < scenarios.size(); ++i)
    if (errors[i]) {
      std::cerr << "error: " << errors[i]->what() << "\n";
      return exit_code(*errors[i]);
    }
  if (results.size() == 1) {
    std::cout << results[0].dump(2) << "\n";
  } else {
    json arr = json::array();
    for (auto& r : results) arr.push_back(std::move(r));
    std::cout << arr.dump(2) << "\n";
  }
  return 0;
}

int cmd_bottleneck(const std::string& fileA, const std::string& fileB) {
  auto load = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open barcode file " + path);
    json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw Error(Errc::ParseError, std::string("bad barcode JSON: ") + e.what());
    }
    return barcode_from_json(j);
  };
  Barcode A = load(fileA), B = load(fileB);
  ExtRat d = bottleneck_distance(A, B);
  json out;
  if (d.infinite) {
    out["distance"] = "inf";
    out["decimal"] = "inf";
  } else {
    out["distance"] = rat_str(d.value);
    out["decimal"] = rat_decimal(d.value);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Indexed action spectra, barcode certificates, and bottleneck distances"};
  app.require_subcommand(1);

  std::string profileFile, degrees = "0..0", gamma2pi = "0";
  long n = 1, N = 0;
  int lambdaSign = 0;
  std::vector<long> exteriorIndices;
  auto* sp = app.add_subcommand("spectrum", "Enumerate the indexed action spectrum of a profile");
  sp->add_option("profile", profileFile, "profile file (header R=p/q, lines r v)")->required();
  sp->add_option("--n", n, "half-dimension");
  sp->add_option("--N", N, "minimal Chern number");
  sp->add_option("--gamma2pi", gamma2pi, "rationality constant in 2pi-units");
  sp->add_option("--lambda-sign", lambdaSign, "sign of the monotonicity constant");
  sp->add_option("--degrees", degrees, "degree or range a..b");
  sp->add_option("--exterior-indices", exteriorIndices, "exterior Morse indices");

  std::vector<std::string> scenarioFiles;
  std::string framesDir;
  unsigned jobs = 1;
  std::optional<unsigned long> seed;
  auto* ct = app.add_subcommand("certificate", "Run a bar certificate from a scenario file");
  ct->add_option("scenario", scenarioFiles, "scenario file(s), key=value format")->required();
  ct->add_option("--frames", framesDir, "directory for per-event SVG snapshots");
  ct->add_option("--jobs", jobs, "parallel scenario runs");
  ct->add_option("--seed", seed, "perturbation seed override");

  std::string barA, barB;
  auto* bt = app.add_subcommand("bottleneck", "Exact bottleneck distance of two barcode files");
  bt->add_option("barcodeA", barA, "barcode JSON file")->required();
  bt->add_option("barcodeB", barB, "barcode JSON file")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (sp->parsed())
      return cmd_spectrum(profileFile, n, N, gamma2pi, lambdaSign, degrees, exteriorIndices);
    if (ct->parsed()) return cmd_certificate(scenarioFiles, framesDir, jobs, seed);
    return cmd_bottleneck(barA, barB);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
