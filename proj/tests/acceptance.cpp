// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: acceptance <pappus binary> <scratch dir>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <algorithm>
#include <random>
#include <sstream>

#include "pappus/limit_set.hpp"
#include "pappus/serialize.hpp"
#include "pappus/verify.hpp"

using namespace pappus;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::cout << "criterion " << n << "\t" << (ok ? "PASS" : "FAIL") << "\t" << detail << std::endl;
  if (!ok) ++failures;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Checks {
  std::map<std::string, CheckResult> by_name;

  bool pass(std::initializer_list<const char*> names, std::string& detail) const {
    bool ok = true;
    for (const char* n : names) {
      const auto& c = by_name.at(n);
      ok = ok && c.status == Status::Pass;
      detail += std::string(detail.empty() ? "" : "; ") + n + " " + to_string(c.status) + " " +
                (c.residual ? fmt_sig(*c.residual, 4) : "-") + " (" + c.tolerance + ")";
    }
    return ok;
  }
};

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <pappus binary> <scratch dir>\n";
    return 2;
  }
  const std::string bin = argv[1];
  const std::filesystem::path dir = argv[2];

  const VerifyConfig cfg;
  const VerifyReport rep = verify_all(default_seed(), cfg);
  Checks ch;
  for (const auto& c : rep.checks) ch.by_name[c.name] = c;
  for (const auto& n : rep.notes) std::cout << "# " << n << "\n";

  {
    std::string d;
    const bool ok = ch.pass({"exact_pappus", "exact_involution", "exact_conjugation", "exact_equivariance"}, d);
    report(1, ok && cfg.law_boxes == 1000 && cfg.law_maps == 100, d);
  }
  {
    std::string d;
    report(2, ch.pass({"anti_homomorphism", "mark_consistency"}, d), d);
  }
  {
    const double r5 = std::sqrt(5.0);
    const Mat3d t1{{{2, 0, 0}, {0, 1, 1}, {0, -1, 3}}};
    const auto e = spectrum(t1);
    bool ok = e.cls == MapClass::Elation;
    for (const auto& x : e.raw_eigenvalues()) ok = ok && close(x, 2.0, 1e-10);
    // (M - 2I) has rank one, so the 2-eigenspace is a plane
    Mat3d n = t1;
    for (int k = 0; k < 3; ++k) n[k][k] -= 2.0;
    const auto sv = linalg::svd(n).sigma;
    ok = ok && sv[1] <= 1e-10 * sv[0];
    const auto p = spectrum(Mat3d{{{-2, 0, 0}, {0, -1, 1}, {0, 1, 3}}});
    const auto raw = p.raw_eigenvalues();
    ok = ok && p.cls == MapClass::Loxodromic && raw.size() == 3 && close(raw[0], 1 + r5, 1e-10) &&
         close(raw[1], -2.0, 1e-10) && close(raw[2], 1 - r5, 1e-10);
    const double ad = p.attracting_point ? dist(*p.attracting_point, rpoint(0, 1, 2 + r5)) : 1.0;
    ok = ok && ad <= 1e-10;
    report(3, ok, "elation eigenvalues 2,2,2 with plane eigenspace; product eigenvalues " + fmt_complex(raw[0]) + "," +
                      fmt_complex(raw[1]) + "," + fmt_complex(raw[2]) + "; attracting point error " + fmt_sig(ad, 3));
  }
  {
    std::string d;
    report(4,
           ch.pass({"loxodromic_harvest", "fixed_points_on_curve", "fixed_lines_on_field", "saddle_consistency",
                    "saddle_separation"},
                   d),
           d);
  }
  {
    std::string d;
    bool ok = ch.pass({"pseudo_limits"}, d);
    std::vector<Mat3d> seq;
    Mat3d p = linalg::identity();
    for (int n = 1; n <= 60; ++n) {
      p = linalg::multiply(p, Mat3d{{{2, 0, 0}, {0, 1, 1}, {0, -1, 3}}});
      seq.push_back(p);
    }
    const auto pd = pseudo_limit_data(seq, cfg.rank_tol);
    const double di = pd.image_point ? dist(*pd.image_point, rpoint(0, 1, 1)) : 1.0;
    const double dk = pd.kernel_line ? line_angle(*pd.kernel_line, rline(0, 1, -1)) : 1.0;
    ok = ok && di <= 1e-12 && dk <= 1e-12;
    report(5, ok, d + "; elation image error " + fmt_sig(di, 3) + ", kernel error " + fmt_sig(dk, 3));
  }
  {
    std::string d;
    bool ok = ch.pass({"invariant_line", "invariant_line_complex", "invariant_point", "invariant_point_complex"}, d);
    const auto g = degeneracy_gate(symmetric_seed(), cfg.degenerate_tol);
    const double da = line_angle(rline(g.line.best[0].real(), g.line.best[1].real(), g.line.best[2].real()),
                                 rline(1, 0, 0));
    ok = ok && g.degenerate && g.line.residual == 0.0 && da <= 1e-12;
    report(6, ok, d + "; symmetric seed invariant line " + coeff_text(g.line.best) + " residual " +
                      fmt_sig(g.line.residual, 3));
  }
  {
    std::string d;
    report(7, ch.pass({"density_gap_fixed_to_curve", "density_gap_curve_to_fixed", "density_monotone"}, d), d);
  }
  {
    std::string d;
    bool ok = ch.pass({"general_position"}, d);
    // unselected sample: a uniform draw of arc lines, no filtering
    const auto a = sample_curve(default_seed(), cfg.depth, 0);
    std::vector<std::size_t> idx(a.lines.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    std::mt19937 rng(cfg.rng_seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<RLine> draw;
    for (std::size_t k = 0; k < cfg.gp_lines; ++k) draw.push_back(a.lines[idx[k]].line);
    const auto c = general_position_census(draw, cfg.gp_tol);
    const std::size_t all = cfg.gp_lines * (cfg.gp_lines - 1) * (cfg.gp_lines - 2) / 6;
    ok = ok && c.max_concurrency == 2 && c.gp_triple_count == all;
    const auto h = general_position_census({rline(0, 1, -1), rline(0, 1, 0), rline(0, 1, 1)}, cfg.gp_tol);
    ok = ok && h.max_concurrency == 3 && h.gp_triple_count == 0;
    report(8, ok, d + "; random draw of " + std::to_string(draw.size()) + " lines: max_concurrency " +
                      std::to_string(c.max_concurrency) + ", " + std::to_string(c.gp_triple_count) + " of " +
                      std::to_string(all) + " triples in general position; horizontal pencil " +
                      std::to_string(h.max_concurrency) + "/" + std::to_string(h.gp_triple_count));
  }
  {
    std::string d;
    bool ok = ch.pass({"hermitian_form"}, d);
    const auto h = hermitian_invariant_search({make_map(Mat3d{{{2, 0, 0}, {0, 1, 0}, {0, 0, 0.5}}})});
    ok = ok && h.found && h.signature && *h.signature == std::pair<int, int>{2, 1} && h.joint_residual <= 1e-12;
    report(9, ok, d + "; diagonal control " + (h.found ? "found" : "not found") + " residual " +
                      fmt_sig(h.joint_residual, 3));
  }
  {
    std::string d;
    report(10, ch.pass({"cluster_proxies", "minimality_gap", "refinement_monotone"}, d), d);
  }
  {
    const auto r1 = dir / "verify_threads1.tsv";
    const auto r8 = dir / "verify_threads8.tsv";
    std::filesystem::remove(r1);
    std::filesystem::remove(r8);
    auto run = [&](int threads, const std::filesystem::path& out) {
      const std::string cmd = "PAPPUS_THREADS=" + std::to_string(threads) + " " + bin + " verify --out " + out.string();
      const int rc = std::system(cmd.c_str());
      return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    };
    const int e1 = run(1, r1);
    const int e8 = run(8, r8);
    const std::string a = slurp(r1), b = slurp(r8);
    report(11, !a.empty() && a == b && e1 == e8,
           "reports of " + std::to_string(a.size()) + " and " + std::to_string(b.size()) + " bytes, exit codes " +
               std::to_string(e1) + " and " + std::to_string(e8) + (a == b ? ", identical" : ", different"));
  }
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " criteria FAIL") << std::endl;
  return failures == 0 ? 0 : 1;
}
