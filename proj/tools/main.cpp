#include "sugra/background_io.hpp"
#include "sugra/reduction.hpp"

#include "suites.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

using namespace sugra;

namespace {

int worker_count() {
  const char* env = std::getenv("SUGRA_WORKERS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n > 0 ? n : 1;
}

/// Evaluates one point-report per probe point (in parallel when asked to) and
/// folds them in point order, so the merged report does not depend on
/// scheduling.
ResidualReport run_per_point(const std::vector<Point>& points,
                             const std::function<ResidualReport(const Point&)>& fn) {
  std::vector<ResidualReport> partial(points.size());
  int workers = std::min<int>(worker_count(), int(points.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < points.size(); ++i) partial[i] = fn(points[i]);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (size_t i = next++; i < points.size(); i = next++) partial[i] = fn(points[i]);
      });
    for (auto& th : pool) th.join();
  }
  ResidualReport merged;
  for (const ResidualReport& r : partial)
    for (const auto& e : r.entries()) {
      if (merged.has(e.name)) merged.update(e.name, e.value);
      else merged.add(e.name, e.value, e.tol, e.note);
    }
  return merged;
}

std::string render_json(const ResidualReport& rep, const std::string& theory,
                        const std::string& command, size_t points) {
  nlohmann::ordered_json out;
  out["command"] = command;
  out["theory"] = theory;
  out["probe_points"] = points;
  out["all_pass"] = rep.all_pass();
  out["residuals"] = nlohmann::ordered_json::array();
  for (const auto& e : rep.entries()) {
    nlohmann::ordered_json row;
    row["name"] = e.name;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", e.value);
    row["value"] = buf;
    std::snprintf(buf, sizeof buf, "%.1e", e.tol);
    row["tol"] = buf;
    row["pass"] = e.pass;
    if (!e.note.empty()) row["note"] = e.note;
    out["residuals"].push_back(row);
  }
  return out.dump(2) + "\n";
}

std::string render_table(const ResidualReport& rep, const std::string& theory,
                         const std::string& command, size_t points) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%s %s  (%zu probe point%s)\n", command.c_str(),
                theory.c_str(), points, points == 1 ? "" : "s");
  out += line;
  std::snprintf(line, sizeof line, "  %-28s %12s %9s  %s\n", "equation", "residual",
                "tol", "status");
  out += line;
  for (const auto& e : rep.entries()) {
    std::snprintf(line, sizeof line, "  %-28s %12.4e %9.1e  %s%s%s\n", e.name.c_str(),
                  e.value, e.tol, e.pass ? "pass" : "FAIL",
                  e.note.empty() ? "" : "  # ", e.note.c_str());
    out += line;
  }
  out += rep.all_pass() ? "all equations satisfied\n" : "";
  if (!rep.all_pass()) {
    const ResidualEntry* worst = nullptr;
    for (const auto& e : rep.entries())
      if (!e.pass && (!worst || e.value > worst->value)) worst = &e;
    std::snprintf(line, sizeof line, "worst offender: %s (%.4e > %.1e)\n",
                  worst->name.c_str(), worst->value, worst->tol);
    out += line;
  }
  return out;
}

struct CheckFlags {
  bool anomaly = false;
  std::string sign_convention;  // empty = take the file's choice
  double tol = -1;              // <0 = take the file's choice
  std::string report_path;
  std::string format = "table";
};

ResidualReport run_check(const LoadedBackground& bg, const CheckFlags& flags) {
  ResidualOptions ropt = bg.tolerances;
  if (flags.tol >= 0) ropt.tol = flags.tol;
  bool flip = flags.sign_convention.empty() ? bg.flip_sign
                                            : flags.sign_convention == "bbs";

  if (bg.m11) {
    Options11 opt;
    opt.tol = ropt.tol;
    opt.tol_override = ropt.tol_override;
    opt.anomaly = flags.anomaly || bg.anomaly;
    opt.flip_cs_sign = flip;
    const Background11& b = *bg.m11;
    return run_per_point(bg.probe_points,
                         [&](const Point& p) { return residuals_11(b, {p}, opt); });
  }
  if (bg.iia) {
    const BackgroundIIA& b = *bg.iia;
    return run_per_point(bg.probe_points,
                         [&](const Point& p) { return residuals_iia(b, {p}, ropt); });
  }
  const BackgroundIIB& b = *bg.iib;
  if (bg.theory == "iib-symmetric") {
    SymmetricFieldsIIB sf = symmetric_fields(b);
    return run_per_point(bg.probe_points, [&](const Point& p) {
      return residuals_iib_symmetric(sf, b, {p}, ropt);
    });
  }
  return run_per_point(bg.probe_points,
                       [&](const Point& p) { return residuals_iib(b, {p}, ropt); });
}

ResidualReport run_reduce(const LoadedBackground& bg, double fiber_length, bool flip) {
  if (!bg.iia || bg.iia->frame_tag != Frame::string_frame)
    throw SpecError("reduce: needs a iia-string background file");
  ReductionData rd = build_gm(*bg.iia, {flip, fiber_length});
  std::vector<Point> lifted;
  for (const Point& q : bg.probe_points) {
    Point p = q;
    p.push_back(0.0);
    lifted.push_back(std::move(p));
  }
  ResidualReport rep;
  auto absorb = [&](const ResidualReport& r) {
    for (const auto& e : r.entries()) rep.add(e.name, e.value, e.tol, e.note);
  };
  absorb(connection_reduction_check(rd, lifted));
  absorb(field_strength_reduce(rd, lifted));
  absorb(lagrangian_reduction_check(rd, lifted));
  absorb(killing_reduction_check(rd, lifted.front(), build_gamma_rep(10)));
  return rep;
}

int emit(const ResidualReport& rep, const std::string& theory,
         const std::string& command, size_t points, const std::string& format,
         const std::string& report_path) {
  std::string body = format == "json" ? render_json(rep, theory, command, points)
                                      : render_table(rep, theory, command, points);
  std::fputs(body.c_str(), stdout);
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw SpecError(report_path + ": cannot write report");
    out << body;
  }
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"supergravity field-equation and Killing-spinor verifier"};
  app.require_subcommand(1);

  CheckFlags flags;
  std::string path;
  CLI::App* check = app.add_subcommand("check", "run a background's residual suite");
  check->add_option("file", path, "background file")->required();
  check->add_flag("--anomaly", flags.anomaly, "include the 8-form correction (11d)");
  check->add_option("--sign-convention", flags.sign_convention, "paper|bbs")
      ->check(CLI::IsMember({"paper", "bbs"}));
  check->add_option("--tol", flags.tol, "default residual tolerance");
  check->add_option("--report", flags.report_path, "also write the report here");
  check->add_option("--format", flags.format, "json|table")
      ->check(CLI::IsMember({"json", "table"}));

  std::string suite;
  std::uint32_t seed = 42;
  int trials = 50;
  CLI::App* ident = app.add_subcommand("identities", "run a property-identity suite");
  ident->add_option("suite", suite,
                    "hodge|clifford|variation|killing-equivalence|reduction|sl2")
      ->required();
  ident->add_option("--seed", seed, "random seed");
  ident->add_option("--trials", trials, "trials per identity");

  std::string rpath;
  double fiber_length = -1;
  CheckFlags rflags;
  CLI::App* reduce = app.add_subcommand("reduce", "lift a iia-string background and "
                                                  "check the reduction dictionary");
  reduce->add_option("file", rpath, "background file")->required();
  reduce->add_option("--fiber-length", fiber_length, "circle length in the lift");
  reduce->add_option("--sign-convention", rflags.sign_convention, "paper|bbs")
      ->check(CLI::IsMember({"paper", "bbs"}));
  reduce->add_option("--report", rflags.report_path, "also write the report here");
  reduce->add_option("--format", rflags.format, "json|table")
      ->check(CLI::IsMember({"json", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) {
      LoadedBackground bg = load_background(path);
      ResidualReport rep = run_check(bg, flags);
      return emit(rep, bg.theory, "check", bg.probe_points.size(), flags.format,
                  flags.report_path);
    }
    if (ident->parsed()) {
      int failures = run_identity_suite(suite, seed, trials);
      if (failures < 0) {
        std::fprintf(stderr, "error: unknown suite '%s'\n", suite.c_str());
        return 2;
      }
      std::printf("suite: %s\n", failures == 0 ? "pass" : "FAIL");
      return failures == 0 ? 0 : 1;
    }
    LoadedBackground bg = load_background(rpath);
    bool flip = rflags.sign_convention.empty() ? bg.flip_sign
                                               : rflags.sign_convention == "bbs";
    double len = fiber_length > 0 ? fiber_length : bg.fiber_length;
    ResidualReport rep = run_reduce(bg, len, flip);
    return emit(rep, bg.theory, "reduce", bg.probe_points.size(), rflags.format,
                rflags.report_path);
  } catch (const SpecError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
