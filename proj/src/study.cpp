#include "nfvm/study.hpp"

#include <cmath>

#include "nfvm/cr_scheme.hpp"
#include "nfvm/dual.hpp"
#include "nfvm/wilson_scheme.hpp"

namespace nfvm {

MeshSizeList refinement_family(Index m0, Index n0, int levels) {
  MeshSizeList sizes;
  Index m = m0, n = n0;
  for (int i = 0; i < levels; ++i) {
    sizes.emplace_back(m, n);
    m *= 2;
    n *= 2;
  }
  return sizes;
}

std::vector<MeshSizeList> benchmark_families() {
  return {refinement_family(2, 2, 7), refinement_family(1, 3, 7), refinement_family(1, 20, 7)};
}

namespace {

void attach_orders(ConvergenceReport& report) {
  std::vector<double> e1;
  for (const ConvergenceRow& r : report.rows) e1.push_back(r.err_h1);
  auto o1 = convergence_order(e1);
  for (std::size_t i = 0; i < report.rows.size(); ++i) report.rows[i].order_h1 = o1[i];
  if (report.has_l2) {
    std::vector<double> e2;
    for (const ConvergenceRow& r : report.rows) e2.push_back(*r.err_l2);
    auto o2 = convergence_order(e2);
    for (std::size_t i = 0; i < report.rows.size(); ++i) report.rows[i].order_l2 = o2[i];
  }
}

}  // namespace

ConvergenceReport run_cr_study(const EllipticProblem& problem, const MeshSizeList& sizes,
                               const std::string& family, const StudyOptions& opts) {
  if (!problem.exact) throw std::invalid_argument("study requires an exact solution");
  ConvergenceReport report;
  report.has_l2 = opts.with_l2;
  AssemblyOptions aopts{opts.quad_area, opts.quad_line};
  for (auto [m, n] : sizes) {
    const TriMesh mesh = build_structured_tri_mesh(static_cast<int>(m), static_cast<int>(n), problem.domain);
    const DualPartition dual = build_cr_dual(mesh);
    const SparseSystem system = assemble_cr(problem, mesh, dual, aopts);
    const SolutionField u = solve_cr(system);

    ConvergenceRow row;
    row.family = family;
    row.m = m;
    row.n = n;
    row.dofs = mesh.n_edges();
    row.h = mesh.max_diameter();
    row.err_h1 = broken_h1_error(*problem.exact, mesh, u, opts.error_degree);
    if (opts.with_l2) row.err_l2 = l2_error(*problem.exact, mesh, u, opts.error_degree);
    report.rows.push_back(row);
  }
  attach_orders(report);
  return report;
}

ConvergenceReport run_wilson_study(const EllipticProblem& problem, const MeshSizeList& sizes,
                                   const std::string& family, const StudyOptions& opts) {
  if (!problem.exact) throw std::invalid_argument("study requires an exact solution");
  ConvergenceReport report;
  report.has_l2 = opts.with_l2;
  AssemblyOptions aopts{opts.quad_area, opts.quad_line};
  for (auto [m, n] : sizes) {
    const RectMesh mesh = build_rect_mesh(static_cast<int>(m), static_cast<int>(n), problem.domain);
    const DualPartition dual = build_wilson_dual(mesh);
    const SparseSystem system = assemble_wilson(problem, mesh, dual, aopts);
    const SolutionField u = solve_wilson(system);

    ConvergenceRow row;
    row.family = family;
    row.m = m;
    row.n = n;
    row.dofs = build_wilson_dof_map(mesh).n_dofs;
    row.h = mesh.max_diameter();
    row.err_h1 = broken_h1_error(*problem.exact, mesh, u, opts.error_degree);
    if (opts.with_l2) row.err_l2 = l2_error(*problem.exact, mesh, u, opts.error_degree);
    report.rows.push_back(row);
  }
  attach_orders(report);
  return report;
}

ConvergenceReport run_wilson_interpolation_study(const EllipticProblem& problem,
                                                 const MeshSizeList& sizes,
                                                 const std::string& family,
                                                 const StudyOptions& opts) {
  if (!problem.exact) throw std::invalid_argument("study requires an exact solution");
  ConvergenceReport report;
  report.has_l2 = opts.with_l2;
  for (auto [m, n] : sizes) {
    const RectMesh mesh = build_rect_mesh(static_cast<int>(m), static_cast<int>(n), problem.domain);
    const SolutionField u = interpolate_wilson(*problem.exact, mesh, opts.quad_area);

    ConvergenceRow row;
    row.family = family;
    row.m = m;
    row.n = n;
    row.dofs = build_wilson_dof_map(mesh).n_dofs;
    row.h = mesh.max_diameter();
    row.err_h1 = broken_h1_error(*problem.exact, mesh, u, opts.error_degree);
    if (opts.with_l2) row.err_l2 = l2_error(*problem.exact, mesh, u, opts.error_degree);
    report.rows.push_back(row);
  }
  attach_orders(report);
  return report;
}

}  // namespace nfvm
