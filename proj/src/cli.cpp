#include "pappus/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pappus/limit_set.hpp"
#include "pappus/render.hpp"
#include "pappus/representation.hpp"
#include "pappus/serialize.hpp"
#include "pappus/verify.hpp"

namespace pappus {

ZBox parse_seed(const std::string& s) {
  if (s == "default") return default_seed();
  if (s == "symmetric") return symmetric_seed();
  std::vector<ZPoint> pts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) pts.push_back(parse_zpoint(item));
  if (pts.size() != 6) throw Error(Errc::Parse, "seed needs default, symmetric or six points p,q,r,s,t,b");
  ZBox b{pts[0], pts[1], pts[2], pts[3], pts[4], pts[5]};
  const auto bad = validate(b);
  if (!bad.empty()) throw Error(Errc::InvalidArgument, "invalid seed box: " + bad.front());
  return b;
}

void write_atomic(const std::string& path, const std::string& data) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::InvalidArgument, "cannot write " + path);
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!f) {
      std::remove(tmp.c_str());
      throw Error(Errc::InvalidArgument, "cannot write " + path);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(Errc::InvalidArgument, "cannot rename onto " + path);
  }
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest, injected;
  for (std::size_t k = 0; k < args.size(); ++k) {
    std::string path;
    if (args[k] == "--config") {
      if (k + 1 >= args.size()) throw Error(Errc::Parse, "--config needs a path");
      path = args[++k];
    } else if (args[k].rfind("--config=", 0) == 0) {
      path = args[k].substr(9);
    } else {
      rest.push_back(args[k]);
      continue;
    }
    std::ifstream f(path);
    if (!f) throw Error(Errc::Parse, "cannot read config " + path);
    std::string line;
    while (std::getline(f, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw Error(Errc::Parse, "config line without '=': " + line);
      auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      std::string key = trim(line.substr(0, eq));
      for (char& c : key)
        if (c == '_') c = '-';
      injected.push_back("--" + key);
      injected.push_back(trim(line.substr(eq + 1)));
    }
  }
  if (injected.empty()) return rest;
  std::size_t at = 0;
  while (at < rest.size() && rest[at].rfind("-", 0) == 0) ++at;
  if (at < rest.size()) ++at;  // after the subcommand
  rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(), injected.end());
  return rest;
}

namespace {

struct Run {
  std::string seed = "default";
  int depth = 0;
  int maxlen = 8;
  int translate = 0;
  std::string mode = "exact";
  double rank_tol = tol::kRank;
  double gap_tol = tol::kGap;
  double mark_tol = 1e-9;
  double no_invariant_tol = 1e-3;
  std::string out, lines_out, alphabet = "12", draw = "curve", view = "-2:2:-2:2", window = "-2:2:-2:2";
  std::string base, dir, word;
  int grid = 256;
  int size = 800;
  bool timing = false;
};

void add_seed(CLI::App* c, Run& r) {
  c->add_option("--seed", r.seed, "default, symmetric, or six points p,q,r,s,t,b (x/y with n:d rationals)")
      ->capture_default_str();
}

void add_tols(CLI::App* c, Run& r) {
  c->add_option("--rank-tol", r.rank_tol)->check(CLI::PositiveNumber)->capture_default_str();
  c->add_option("--gap-tol", r.gap_tol)->check(CLI::PositiveNumber)->capture_default_str();
  c->add_option("--mark-tol", r.mark_tol)->check(CLI::PositiveNumber)->capture_default_str();
  c->add_option("--no-invariant-tol", r.no_invariant_tol)->check(CLI::PositiveNumber)->capture_default_str();
}

void add_depth(CLI::App* c, Run& r, int def) {
  r.depth = def;
  c->add_option("--depth", r.depth, "tau-tree depth")->check(CLI::Range(0, 24))->capture_default_str();
}

void emit(const Run& r, const std::string& data, std::ostream& out) {
  if (r.out.empty())
    out << data;
  else
    write_atomic(r.out, data);
}

RepOptions rep_options(const Run& r) {
  RepOptions o;
  o.mark_tol = r.mark_tol;
  return o;
}

void gate_or_throw(const ZBox& seed) {
  const auto g = degeneracy_gate(seed);
  if (g.degenerate) {
    throw Error(Errc::DegenerateSeed, "degenerate seed: letter maps share the invariant line " + coeff_text(g.line.best));
  }
}

int cmd_orbit(const Run& r, std::ostream& out) {
  const ZBox seed = parse_seed(r.seed);
  gate_or_throw(seed);
  for (char c : r.alphabet) box_op(c);
  std::string data;
  if (r.mode == "exact") {
    for (const auto& n : orbit(seed, r.depth, r.alphabet)) data += orbit_line(n) + "\n";
  } else {
    for (const auto& n : orbit(to_float(seed), r.depth, r.alphabet)) data += orbit_line(n) + "\n";
  }
  emit(r, data, out);
  return 0;
}

int cmd_curve(const Run& r) {
  const ZBox seed = parse_seed(r.seed);
  SampleOptions opt;
  opt.rep = rep_options(r);
  const auto a = sample_curve(seed, r.depth, r.translate, opt);
  std::string c, l;
  for (const auto& s : a.curve) c += curve_line(s) + "\n";
  for (const auto& s : a.lines) l += field_line(s) + "\n";
  write_atomic(r.out, c);
  write_atomic(r.lines_out.empty() ? r.out + ".lines" : r.lines_out, l);
  return 0;
}

int cmd_render(const Run& r, std::ostream& out) {
  const DrawSet draw = parse_draw(r.draw);
  const View view = parse_view(r.view);
  const ZBox seed = parse_seed(r.seed);
  SampleOptions opt;
  opt.rep = rep_options(r);
  LimitSetApprox a;
  if (draw.curve || draw.lines) a = sample_curve(seed, r.depth, r.translate, opt);
  emit(r, render_svg(a, seed, r.depth, draw, view, r.size), out);
  return 0;
}

Vec3<cplx> parse_cvec(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, '/')) parts.push_back(item);
  if (parts.size() != 3) throw Error(Errc::Parse, "complex point needs 3 coordinates: '" + s + "'");
  return {parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2])};
}

int cmd_slice(const Run& r, std::ostream& out) {
  SliceSpec s;
  s.base = {parse_cvec(r.base)};
  s.dir = {parse_cvec(r.dir)};
  s.window = parse_view(r.window);
  s.grid = r.grid;
  check_slice(s);
  const ZBox seed = parse_seed(r.seed);
  SampleOptions opt;
  opt.rep = rep_options(r);
  const auto a = sample_curve(seed, r.depth, r.translate, opt);
  std::vector<CLine> lines;
  for (const auto& l : a.lines) lines.push_back(l.cline);
  const std::vector<std::string> comments = {
      "kulkarni distance to " + std::to_string(lines.size()) + " sampled lines, depth " + std::to_string(r.depth) +
          ", translate " + std::to_string(r.translate),
      "approximation error bound " + fmt_sig(a.eps, 6) + "; value 65535 is pi/2"};
  emit(r, render_pgm(s, lines, comments), out);
  return 0;
}

int cmd_verify(const Run& r, std::ostream& out, std::ostream& err) {
  const ZBox seed = parse_seed(r.seed);
  VerifyConfig cfg;
  cfg.depth = r.depth;
  cfg.maxlen = r.maxlen;
  cfg.translate_len = r.translate;
  cfg.rank_tol = r.rank_tol;
  cfg.gap_tol = r.gap_tol;
  cfg.mark_tol = r.mark_tol;
  cfg.no_invariant_tol = r.no_invariant_tol;
  const VerifyReport rep = verify_all(seed, cfg);
  emit(r, format_report(rep), out);
  if (r.timing)
    for (const auto& c : rep.checks) err << c.name << "\t" << fmt_sig(c.seconds, 3) << "s\n";
  return rep.exit_code;
}

std::string opt_text(const std::optional<RPoint>& p) { return p ? to_text(*p) : "-"; }
std::string opt_text(const std::optional<RLine>& l) { return l ? to_text(*l) : "-"; }

int cmd_spectrum(const Run& r, std::ostream& out) {
  const ZBox seed = parse_seed(r.seed);
  const RepOptions ro = rep_options(r);
  GroupElement g;
  if (r.mode == "exact") {
    g = rho_hat(r.word, seed, ro);
  } else {
    const std::string w = reduce_word(r.word);
    const RBox fs = to_float(seed);
    g = element_from_box(w, fs, apply_word(w, fs), ro);
  }
  const auto s = spectrum(g.map, r.gap_tol);
  std::string ev;
  for (const auto& x : s.raw_eigenvalues()) ev += (ev.empty() ? "" : ",") + fmt_complex(x);
  out << (g.word.empty() ? "-" : g.word) << "\t" << to_string(s.cls) << "\t" << ev << "\t"
      << fmt_sig(s.moduli_gaps[0]) << "," << fmt_sig(s.moduli_gaps[1]) << "\t" << opt_text(s.attracting_point) << "\t"
      << opt_text(s.saddle_point) << "\t" << opt_text(s.repelling_point) << "\t" << opt_text(s.attracting_line)
      << "\t" << opt_text(s.repelling_line) << "\t" << fmt_sig(g.mark_residual) << "\n";
  return 0;
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case Errc::DegenerateSeed: return 3;
    case Errc::InvalidArgument:
    case Errc::Parse:
    case Errc::BadLetter: return 2;
    default: return 1;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pappus marked-box groups: orbits, curves, renders, slices and verification", "pappus"};
  app.require_subcommand(1);
  // repeated flags (config file then command line): the last one wins
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Run ro, rc, rr, rs, rv, rp;
  rs.translate = 2;
  rv.translate = 4;

  auto* orbit_c = app.add_subcommand("orbit", "dump the marked-box orbit");
  add_seed(orbit_c, ro);
  add_depth(orbit_c, ro, 6);
  orbit_c->add_option("--alphabet", ro.alphabet, "letters from 12i")->capture_default_str();
  orbit_c->add_option("--mode", ro.mode)->check(CLI::IsMember({"exact", "float"}))->capture_default_str();
  orbit_c->add_option("--out", ro.out, "output path (stdout if absent)");

  auto* curve_c = app.add_subcommand("curve", "dump curve and line-field samples");
  add_seed(curve_c, rc);
  add_depth(curve_c, rc, 12);
  curve_c->add_option("--translate", rc.translate, "max word length of translates")
      ->check(CLI::Range(0, 12))
      ->capture_default_str();
  curve_c->add_option("--mark-tol", rc.mark_tol)->check(CLI::PositiveNumber)->capture_default_str();
  curve_c->add_option("--out", rc.out, "curve dump path")->required();
  curve_c->add_option("--lines-out", rc.lines_out, "line dump path (default: <out>.lines)");

  auto* render_c = app.add_subcommand("render", "SVG of the curve, line field and boxes");
  add_seed(render_c, rr);
  add_depth(render_c, rr, 10);
  render_c->add_option("--translate", rr.translate)->check(CLI::Range(0, 12))->capture_default_str();
  render_c->add_option("--draw", rr.draw, "comma list of curve, lines, boxes")->capture_default_str();
  render_c->add_option("--view", rr.view, "x0:x1:y0:y1")->capture_default_str();
  render_c->add_option("--size", rr.size, "width in pixels")->check(CLI::Range(16, 4096))->capture_default_str();
  render_c->add_option("--out", rr.out, "output path (stdout if absent)");

  auto* slice_c = app.add_subcommand("slice", "16-bit PGM of the distance to the sampled lines on a complex line");
  add_seed(slice_c, rs);
  add_depth(slice_c, rs, 10);
  slice_c->add_option("--translate", rs.translate)->check(CLI::Range(0, 12))->capture_default_str();
  slice_c->add_option("--base", rs.base, "complex point a/b/c")->required();
  slice_c->add_option("--dir", rs.dir, "complex point a/b/c")->required();
  slice_c->add_option("--window", rs.window, "re0:re1:im0:im1")->capture_default_str();
  slice_c->add_option("--grid", rs.grid)->check(CLI::Range(1, 4096))->capture_default_str();
  slice_c->add_option("--out", rs.out, "output path (stdout if absent)");

  auto* verify_c = app.add_subcommand("verify", "run the verification suite");
  add_seed(verify_c, rv);
  add_depth(verify_c, rv, 14);
  verify_c->add_option("--maxlen", rv.maxlen, "max word length")->check(CLI::Range(0, 12))->capture_default_str();
  verify_c->add_option("--translate", rv.translate)->check(CLI::Range(0, 12))->capture_default_str();
  add_tols(verify_c, rv);
  verify_c->add_option("--out", rv.out, "report path (stdout if absent)");
  verify_c->add_flag("--timing", rv.timing, "per-check wall time on stderr");

  auto* spectrum_c = app.add_subcommand("spectrum", "spectral report of one word");
  add_seed(spectrum_c, rp);
  spectrum_c->add_option("--word", rp.word, "letters from 12i")->required();
  spectrum_c->add_option("--mode", rp.mode)->check(CLI::IsMember({"exact", "float"}))->capture_default_str();
  spectrum_c->add_option("--gap-tol", rp.gap_tol)->check(CLI::PositiveNumber)->capture_default_str();
  spectrum_c->add_option("--mark-tol", rp.mark_tol)->check(CLI::PositiveNumber)->capture_default_str();

  try {
    std::vector<std::string> args = expand_config(std::vector<std::string>(argv + 1, argv + argc));
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*orbit_c) return cmd_orbit(ro, out);
    if (*curve_c) return cmd_curve(rc);
    if (*render_c) return cmd_render(rr, out);
    if (*slice_c) return cmd_slice(rs, out);
    if (*verify_c) return cmd_verify(rv, out, err);
    if (*spectrum_c) return cmd_spectrum(rp, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace pappus
