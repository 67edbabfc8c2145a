#include "sosgap/sdp/solution.hpp"

#include "sosgap/error.hpp"
#include "sosgap/sdp/svec.hpp"
#include "sosgap/solver/cones.hpp"

namespace sosgap {

SolverSolution extract_solution(const ConicProgram& program, const SolverResult& result) {
  if (!program.variables) throw InputError("extract_solution: program has no variable layout");
  const VariableLayout& layout = *program.variables;
  const std::vector<double>& x = result.state.x;
  if (x.size() != program.cols) throw InputError("extract_solution: solver state does not match the program");
  SolverSolution sol;
  sol.lambda0 = x[layout.lambda];
  const std::span<const double> gram(x.data() + layout.gram_offset, svec_length(layout.gram_side));
  Eigen::MatrixXd p = expand_gram(smat(gram), layout.form);
  sol.p0 = 0.5 * (p + p.transpose());
  sol.residuals = result.residuals;
  sol.status = result.status;
  sol.eps = result.eps;
  sol.iterations = result.iterations;
  return sol;
}

SolverState constrained_warm_start(const ConicProgram& constrained, const SolverState& presolve) {
  if (!constrained.variables || !constrained.metadata.lambda_upper || constrained.cones.nonneg != 2) {
    throw InputError("constrained_warm_start: not a constrained sum-of-squares program");
  }
  const VariableLayout& layout = *constrained.variables;
  SolverState st;
  if (layout.form == GramForm::Full) {
    if (presolve.x.size() != constrained.cols) throw InputError("constrained_warm_start: column count mismatch");
    st.x = presolve.x;
  } else {
    const std::size_t n = layout.basis_size();
    if (presolve.x.size() != 1 + svec_length(n)) throw InputError("constrained_warm_start: column count mismatch");
    const Eigen::MatrixXd p = smat(std::span<const double>(presolve.x.data() + 1, svec_length(n)));
    st.x.assign(constrained.cols, 0.0);
    svec_into(restrict_gram(p, layout.form),
              std::span<double>(st.x.data() + layout.gram_offset, svec_length(layout.gram_side)));
  }
  st.x[constrained.variables->lambda] = *constrained.metadata.lambda_upper;
  st.y.assign(constrained.rows, 0.0);
  st.y[constrained.cones.zero + 1] = 1.0;
  std::vector<double> ax(constrained.rows, 0.0);
  for (const Triplet& t : constrained.a) ax[t.row] += t.value * st.x[t.col];
  st.s.resize(constrained.rows);
  for (std::size_t i = 0; i < constrained.rows; ++i) st.s[i] = constrained.b[i] - ax[i];
  PsdProjector workspace;
  project_cone(constrained.cones, st.s, true, workspace);
  return st;
}

}  // namespace sosgap
