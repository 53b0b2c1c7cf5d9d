#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "nfvm/cr_scheme.hpp"
#include "nfvm/dual.hpp"
#include "nfvm/export.hpp"
#include "nfvm/norms.hpp"
#include "nfvm/problem.hpp"
#include "nfvm/study.hpp"
#include "nfvm/wilson_scheme.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitVerify = 4;

struct SizePair {
  nfvm::Index m = 0, n = 0;
};

bool parse_size(const std::string& text, SizePair& out) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return false;
  try {
    out.m = std::stoll(text.substr(0, comma));
    out.n = std::stoll(text.substr(comma + 1));
  } catch (...) {
    return false;
  }
  return out.m > 0 && out.n > 0;
}

void print_report(const nfvm::ConvergenceReport& report) {
  std::printf("%-10s %6s %6s %8s %12s %14s %9s", "family", "M", "N", "n", "h", "err_h1",
              "order");
  if (report.has_l2) std::printf(" %14s %9s", "err_l2", "order");
  std::printf("\n");
  for (const nfvm::ConvergenceRow& r : report.rows) {
    std::printf("%-10s %6lld %6lld %8lld %12.6e %14.6e", r.family.c_str(),
                static_cast<long long>(r.m), static_cast<long long>(r.n),
                static_cast<long long>(r.dofs), r.h, r.err_h1);
    if (r.order_h1)
      std::printf(" %9.2f", *r.order_h1);
    else
      std::printf(" %9s", "-");
    if (report.has_l2) {
      std::printf(" %14.6e", *r.err_l2);
      if (r.order_l2)
        std::printf(" %9.2f", *r.order_l2);
      else
        std::printf(" %9s", "-");
    }
    std::printf("\n");
  }
}

int cmd_study(const std::string& scheme, const SizePair& base, int levels, int quad_area,
              int quad_line, const std::string& out_csv) {
  nfvm::EllipticProblem problem = nfvm::benchmark_poisson_problem();
  nfvm::StudyOptions opts;
  opts.quad_area = quad_area;
  opts.quad_line = quad_line;
  opts.with_l2 = (scheme == "wilson");
  const nfvm::MeshSizeList sizes =
      nfvm::refinement_family(base.m, base.n, levels);
  const std::string family =
      "(" + std::to_string(base.m) + "," + std::to_string(base.n) + ")";

  nfvm::ConvergenceReport report;
  try {
    report = scheme == "cr" ? nfvm::run_cr_study(problem, sizes, family, opts)
                            : nfvm::run_wilson_study(problem, sizes, family, opts);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver failure in %s study, family %s: %s\n", scheme.c_str(),
                 family.c_str(), e.what());
    return kExitSolver;
  }

  print_report(report);
  if (!out_csv.empty()) nfvm::write_csv(report, out_csv);
  return kExitOk;
}

int cmd_verify(bool perturb) {
  using nfvm::Mat6;
  using nfvm::Vec6;
  int failures = 0;
  auto check = [&](const char* name, bool ok) {
    std::printf("%-52s %s\n", name, ok ? "pass" : "FAIL");
    if (!ok) ++failures;
  };

  auto [a1, a2] = nfvm::reference_matrices();
  if (perturb) a1(0, 0) += 1e-6;  // negative-control hook
  const Mat6 a1s = 0.5 * (a1 + a1.transpose());
  const Mat6 a2s = 0.5 * (a2 + a2.transpose());
  Vec6 e;
  e << 1, 1, 1, 1, 0, 0;
  const Mat6 eproj = (e * e.transpose()) / e.squaredNorm();

  check("A1 e = 0, A1^T e = 0",
        (a1 * e).cwiseAbs().maxCoeff() <= 1e-14 &&
            (a1.transpose() * e).cwiseAbs().maxCoeff() <= 1e-14);
  check("A2 e = 0, A2^T e = 0",
        (a2 * e).cwiseAbs().maxCoeff() <= 1e-14 &&
            (a2.transpose() * e).cwiseAbs().maxCoeff() <= 1e-14);

  auto psd_rank3 = [](const Mat6& m) {
    Eigen::SelfAdjointEigenSolver<Mat6> es(m);
    int positive = 0;
    for (int i = 0; i < 6; ++i) {
      if (es.eigenvalues()[i] < -1e-10) return false;
      if (es.eigenvalues()[i] > 1e-10) ++positive;
    }
    return positive == 3;
  };
  check("sym(A1) PSD of rank 3", psd_rank3(a1s));
  check("sym(A2) PSD of rank 3", psd_rank3(a2s));

  check("E is the rank-1 projection onto span{e}",
        (eproj * eproj - eproj).cwiseAbs().maxCoeff() <= 1e-14 &&
            (eproj * e - e).cwiseAbs().maxCoeff() <= 1e-14);

  Eigen::SelfAdjointEigenSolver<Mat6> es(a1s + a2s + eproj);
  const double lmin = es.eigenvalues().minCoeff();
  std::printf("lambda_min(sym(A1)+sym(A2)+E) = %.10f\n", lmin);
  check("lambda_min equals 1/12 within 1e-10", std::abs(lmin - 1.0 / 12.0) <= 1e-10);

  bool param_ok = true;
  for (double r : {0.3, 0.75, 1.0, 1.6, 4.2}) {
    const Mat6 direct = nfvm::element_stiffness_physical(1.0, r);
    Mat6 viaref = r * a1 + (1.0 / r) * a2;
    if ((viaref - direct).cwiseAbs().maxCoeff() > 1e-12) param_ok = false;
  }
  check("element stiffness matches physical assembly (5 ratios)", param_ok);

  // C-R scheme properties on a small solve.
  try {
    nfvm::EllipticProblem problem = nfvm::benchmark_poisson_problem();
    const nfvm::TriMesh mesh = nfvm::build_structured_tri_mesh(4, 4, problem.domain);
    const nfvm::DualPartition dual = nfvm::build_cr_dual(mesh);
    check("C-R dual partition covers the domain",
          std::abs(dual.total_area() - problem.domain.area()) <= 1e-12);
    check("Euler relation V - E + T = 1",
          mesh.n_vertices() - mesh.n_edges() + mesh.n_triangles() == 1);
    const nfvm::SolutionField u = nfvm::solve_cr(nfvm::assemble_cr(problem, mesh, dual));
    double worst = 0.0;
    for (double r : nfvm::local_conservation_residual(u, problem, mesh, dual))
      worst = std::max(worst, std::abs(r));
    check("C-R local conservation residual <= 1e-10", worst <= 1e-10);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "C-R property suite aborted: %s\n", ex.what());
    ++failures;
  }

  // Wilson scheme conservation on a small solve.
  try {
    nfvm::EllipticProblem problem = nfvm::benchmark_poisson_problem();
    const nfvm::RectMesh mesh = nfvm::build_rect_mesh(4, 4, problem.domain);
    const nfvm::DualPartition dual = nfvm::build_wilson_dual(mesh);
    check("Wilson dual partition covers the domain",
          std::abs(dual.total_area() - problem.domain.area()) <= 1e-12);
    const nfvm::SolutionField u =
        nfvm::solve_wilson(nfvm::assemble_wilson(problem, mesh, dual));
    double worst = 0.0;
    for (double r : nfvm::local_conservation_residual(u, problem, mesh, dual))
      worst = std::max(worst, std::abs(r));
    check("Wilson local conservation residual <= 1e-10", worst <= 1e-10);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "Wilson property suite aborted: %s\n", ex.what());
    ++failures;
  }

  if (failures > 0) {
    std::printf("%d check(s) failed\n", failures);
    return kExitVerify;
  }
  std::printf("all checks passed\n");
  return kExitOk;
}

int cmd_mesh_dump(const SizePair& size, const std::string& kind, const std::string& svg_path,
                  const std::string& text_path) {
  const nfvm::Rect domain{0.0, 1.0, 0.0, 1.0};
  try {
    if (kind == "cr") {
      const nfvm::TriMesh mesh =
          nfvm::build_structured_tri_mesh(static_cast<int>(size.m), static_cast<int>(size.n),
                                          domain);
      const nfvm::DualPartition dual = nfvm::build_cr_dual(mesh);
      if (!svg_path.empty()) nfvm::write_text_file(nfvm::mesh_to_svg(mesh, &dual), svg_path);
      if (!text_path.empty()) nfvm::write_text_file(nfvm::mesh_to_text(mesh), text_path);
      std::printf("triangulation (%lld,%lld): %lld vertices, %lld triangles, %lld edges, "
                  "%zu control volumes\n",
                  static_cast<long long>(size.m), static_cast<long long>(size.n),
                  static_cast<long long>(mesh.n_vertices()),
                  static_cast<long long>(mesh.n_triangles()),
                  static_cast<long long>(mesh.n_edges()), dual.control_volumes.size());
    } else {
      const nfvm::RectMesh mesh =
          nfvm::build_rect_mesh(static_cast<int>(size.m), static_cast<int>(size.n), domain);
      const nfvm::DualPartition dual = nfvm::build_wilson_dual(mesh);
      if (!svg_path.empty()) nfvm::write_text_file(nfvm::mesh_to_svg(mesh, &dual), svg_path);
      std::printf("rectangle mesh (%lld,%lld): %lld vertices, %lld cells, %zu control "
                  "volumes\n",
                  static_cast<long long>(size.m), static_cast<long long>(size.n),
                  static_cast<long long>(mesh.n_vertices()),
                  static_cast<long long>(mesh.n_cells()), dual.control_volumes.size());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "mesh dump failed: %s\n", e.what());
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonconforming finite volume solvers (C-R and hybrid Wilson schemes)"};
  app.require_subcommand(1);

  std::string scheme = "cr", family = "2,2", out_csv, svg_path, text_path, kind = "cr";
  int levels = 5, quad_area = 4, quad_line = 3, threads = 1;
  bool perturb = false;

  CLI::App* study = app.add_subcommand("study", "Run a convergence study");
  study->add_option("--scheme", scheme, "cr | wilson")
      ->check(CLI::IsMember({"cr", "wilson"}));
  study->add_option("--family", family, "base mesh size M,N (doubles per level)");
  study->add_option("--levels", levels, "number of refinement levels")
      ->check(CLI::PositiveNumber);
  study->add_option("--quad-area", quad_area, "area quadrature degree");
  study->add_option("--quad-line", quad_line, "line quadrature degree");
  study->add_option("--out", out_csv, "CSV output path");
  study->add_option("--threads", threads, "worker threads (1 = deterministic)");

  CLI::App* verify = app.add_subcommand("verify", "Run the spectral/property checks");
  verify->add_flag("--perturb", perturb, "negative control: perturb A1 before checking");

  CLI::App* dump = app.add_subcommand("mesh-dump", "Write mesh/dual drawings");
  dump->add_option("--family", family, "mesh size M,N");
  dump->add_option("--kind", kind, "cr | wilson")->check(CLI::IsMember({"cr", "wilson"}));
  dump->add_option("--svg", svg_path, "SVG output path");
  dump->add_option("--text", text_path, "plain-text mesh output path (cr only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  SizePair size;
  if (!parse_size(family, size)) {
    std::fprintf(stderr, "invalid --family '%s': expected M,N with positive integers\n",
                 family.c_str());
    return kExitConfig;
  }

  if (study->parsed()) return cmd_study(scheme, size, levels, quad_area, quad_line, out_csv);
  if (verify->parsed()) return cmd_verify(perturb);
  return cmd_mesh_dump(size, kind, svg_path, text_path);
}
