#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncdr/hierarchy.hpp"
#include "ncdr/parallel.hpp"
#include "ncdr/pdo.hpp"
#include "ncdr/pixton.hpp"
#include "ncdr/potential.hpp"
#include "ncdr/psi.hpp"

using nlohmann::json;
using namespace ncdr;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct Output {
  json document;
  bool ok = true;
};

struct Common {
  std::string cache_dir;
  unsigned jobs = 0;
  std::string output;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

std::optional<std::filesystem::path> cache_dir(const Common& c) {
  if (const char* env = std::getenv("PIXTON_CACHE_DIR"); env && *env) return std::filesystem::path(env);
  if (!c.cache_dir.empty()) return std::filesystem::path(c.cache_dir);
  return std::nullopt;
}

void attach_caches(const Common& c) {
  if (auto dir = cache_dir(c)) {
    std::filesystem::create_directories(*dir);
    default_psi_table().attach_cache(*dir / "psi.cache");
  }
}

json flow_json(int n, const std::string& format, int amax, int diff_degree) {
  require(n >= 1 && n <= 4, "--n must be in [1, 4]");
  require(amax >= 0 && amax <= 4, "--amax must be in [0, 4]");
  FlowWindow fw;
  fw.max_diff_degree = diff_degree;
  json out = {{"n", n}, {"format", format}, {"maxDiffDegree", diff_degree}};
  if (format == "star") {
    out["terms"] = star_terms_json(star_factorize(flow_density(n, fw), n));
  } else if (format == "expanded") {
    out["rhs"] = lax_flow_rhs(n, fw).to_json();
  } else {
    out["amax"] = amax;
    out["flow"] = to_fourier(lax_flow_rhs(n, fw), amax).to_json();
  }
  return out;
}

struct VerifyArgs {
  std::string suite = "main-theorem";
  int G = 2;
  int amax = 2;
  int nmax = 4;
  int dmax = 7;
  int flow = 1;
};

Output verify(const VerifyArgs& v, unsigned jobs) {
  require(v.G >= 0 && v.G <= 3, "--G must be in [0, 3]");
  require(v.amax >= 0 && v.amax <= 3, "--amax must be in [0, 3]");
  require(v.nmax >= 3 && v.nmax <= 6, "--nmax must be in [3, 6]");
  require(v.dmax >= 0 && v.dmax <= 12, "--dmax must be in [0, 12]");
  require(v.flow >= 1 && v.flow <= 3, "--flow must be in [1, 3]");
  Output out;
  auto main_theorem = [&](bool wk) {
    MainTheoremWindow w{v.G, wk ? 0 : v.amax, v.nmax, v.dmax, v.flow, wk};
    std::shared_ptr<CoefficientSource> src =
        wk ? std::shared_ptr<CoefficientSource>(std::make_shared<PsiSource>()) : std::make_shared<PixtonSource>();
    TruncatedPotential P({w.G, w.Amax, w.Nmax, w.Dmax}, src);
    DressedSeries D(P);
    auto report = check_main_theorem(wk ? wk_flow(v.flow, w) : main_theorem_flow(v.flow, w), D, w, false, jobs);
    out.ok = out.ok && report.ok();
    return report.to_json();
  };
  auto checks = [&](const CheckReport& r) {
    out.ok = out.ok && r.ok();
    return r.to_json();
  };
  auto corollary = [&]() {
    json list = json::array();
    for (int g = 1; g <= std::max(1, std::min(v.G, 2)); ++g) {
      for (int a = 0; a <= v.amax; ++a) list.push_back(checks(check_corollary(g, a)));
    }
    return list;
  };
  auto string_dilaton = [&]() {
    return checks(check_string_dilaton_potential(build_potential({v.G, v.amax, v.nmax, v.dmax}, std::make_shared<PixtonSource>(), jobs)));
  };
  auto cd = [&]() { return checks(check_CD_functions({std::min(v.G, 2), 3, 2, 6}, jobs)); };
  auto commute = [&]() {
    json list = json::array();
    for (auto [m, n] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
      bool ok = flows_commute(m, n, {6, 8});
      out.ok = out.ok && ok;
      list.push_back({{"flows", {m, n}}, {"commute", ok}});
    }
    return json{{"suite", "commute"}, {"window", {{"maxEps", 6}, {"maxDiffDegree", 8}}}, {"pairs", list}};
  };

  if (v.suite == "main-theorem") {
    out.document = main_theorem(false);
  } else if (v.suite == "wk") {
    out.document = main_theorem(true);
  } else if (v.suite == "corollary") {
    out.document = {{"suite", "corollary"}, {"reports", corollary()}};
  } else if (v.suite == "string-dilaton") {
    out.document = string_dilaton();
  } else if (v.suite == "cd") {
    out.document = cd();
  } else if (v.suite == "commute") {
    out.document = commute();
  } else if (v.suite == "all") {
    out.document = {{"main-theorem", main_theorem(false)}, {"wk", main_theorem(true)},
                    {"corollary", corollary()},            {"string-dilaton", string_dilaton()},
                    {"cd", cd()},                          {"commute", commute()}};
  } else {
    throw std::invalid_argument("unknown suite " + v.suite);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with Pixton's DR formula and the noncommutative KdV hierarchy"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--cache-dir", common.cache_dir, "Directory for persistent caches (PIXTON_CACHE_DIR overrides)");
  app.add_option("--jobs", common.jobs, "Worker threads (default: available parallelism)");
  app.add_option("-o,--output", common.output, "Write JSON here instead of stdout");

  int g = 1, deg = 0, n = 1, amax = 1, diff_degree = 8;
  std::vector<int> d, A;
  std::string format = "star";

  auto* psi = app.add_subcommand("psi", "Psi-class intersection number");
  psi->add_option("--g", g)->required();
  psi->add_option("--d", d, "Psi exponents")->required();

  auto* pixton = app.add_subcommand("pixton", "Pairing of the Pixton class with psi classes");
  pixton->add_option("--g", g)->required();
  pixton->add_option("--deg", deg, "Degree d of P_g^d")->required();
  pixton->add_option("--A", A)->required();
  pixton->add_option("--d", d, "Psi exponents")->required();

  auto* dr = app.add_subcommand("dr", "Pairing of the DR cycle with psi classes");
  dr->add_option("--g", g)->required();
  dr->add_option("--A", A)->required();
  dr->add_option("--d", d, "Psi exponents")->required();

  auto* flow = app.add_subcommand("nckdv-flow", "Flow of the noncommutative KdV hierarchy");
  flow->add_option("--n", n)->required();
  flow->add_option("--format", format)->check(CLI::IsMember({"star", "expanded", "fourier"}));
  flow->add_option("--amax", amax);
  flow->add_option("--max-diff-degree", diff_degree);

  auto* fourier = app.add_subcommand("fourier", "Fourier-mode form of a flow");
  fourier->add_option("--n", n)->required();
  fourier->add_option("--amax", amax);
  fourier->add_option("--max-diff-degree", diff_degree);

  ReconstructionBounds bounds;
  bool cache_text = false;
  auto* reconstruct = app.add_subcommand("reconstruct", "c-coefficients from the special flow");
  reconstruct->add_option("--eps-order", bounds.eps_order);
  reconstruct->add_option("--nmax", bounds.n_max);
  reconstruct->add_option("--dmax", bounds.d_max);
  reconstruct->add_option("--amax", bounds.Amax);
  reconstruct->add_flag("--cache-text", cache_text, "Emit the cache text format instead of JSON");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("--suite", va.suite)
      ->check(CLI::IsMember({"main-theorem", "corollary", "string-dilaton", "cd", "wk", "commute", "all"}));
  verify_cmd->add_option("--G", va.G);
  verify_cmd->add_option("--amax", va.amax);
  verify_cmd->add_option("--nmax", va.nmax);
  verify_cmd->add_option("--dmax", va.dmax);
  verify_cmd->add_option("--flow", va.flow);

  int cutoff = 8, alpha_max = 3;
  auto* identities = app.add_subcommand("identities", "Series identities behind the A-coefficients");
  identities->add_option("--cutoff", cutoff);
  identities->add_option("--alpha-max", alpha_max);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  Output out;
  std::string text;
  try {
    if (common.jobs > 0) set_default_jobs(common.jobs);
    attach_caches(common);
    if (*psi) {
      out.document = {{"g", g}, {"d", d}, {"value", to_string(psi_correlator(g, d))}};
    } else if (*pixton) {
      out.document = pixton_result_json(g, deg, A, d, pixton_pairing_detailed(g, deg, A, d));
    } else if (*dr) {
      out.document = {{"g", g}, {"A", A}, {"d", d}, {"value", to_string(dr_pairing(g, A, d))}};
    } else if (*flow) {
      out.document = flow_json(n, format, amax, diff_degree);
    } else if (*fourier) {
      out.document = flow_json(n, "fourier", amax, diff_degree);
    } else if (*reconstruct) {
      require(bounds.eps_order >= 0 && bounds.eps_order <= 4, "--eps-order must be in [0, 4]");
      require(bounds.n_max >= 0 && bounds.n_max <= 4, "--nmax must be in [0, 4]");
      require(bounds.d_max >= 0 && bounds.d_max <= 10, "--dmax must be in [0, 10]");
      require(bounds.Amax >= 0 && bounds.Amax <= 3, "--amax must be in [0, 3]");
      FlowWindow fw;
      fw.max_diff_degree = 2 * bounds.eps_order + 1;
      auto table = reconstruct_from_special_flow(to_fourier(lax_flow_rhs(1, fw), bounds.n_max * bounds.Amax), bounds);
      if (auto dir = cache_dir(common)) {
        std::ofstream(*dir / "ccoeff.cache") << table.to_cache_text();
      }
      if (cache_text) {
        text = table.to_cache_text();
      } else {
        out.document = table.to_json();
      }
    } else if (*verify_cmd) {
      out = verify(va, common.jobs);
    } else if (*identities) {
      require(alpha_max >= 0 && alpha_max <= 6, "--alpha-max must be in [0, 6]");
      auto r = verify_series_identities(cutoff, alpha_max);
      out.ok = r.ok();
      out.document = r.to_json();
      out.document["cutoff"] = cutoff;
      out.document["alphaMax"] = alpha_max;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (text.empty()) text = out.document.dump() + "\n";
  if (!common.output.empty()) {
    std::ofstream f(common.output);
    if (!f) {
      std::cerr << "error: cannot write " << common.output << "\n";
      return kUsage;
    }
    f << text;
  } else {
    std::cout << text;
  }
  return out.ok ? kOk : kMismatch;
}
