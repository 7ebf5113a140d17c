#pragma once

#include <string>
#include <utility>
#include <vector>

namespace phasekick {

enum class CriterionStatus { Pass, Fail, Skip };

struct CriterionResult {
    std::string id;
    std::string title;
    CriterionStatus status;
    std::string detail;   // measured numbers, one line
};

// Options for the release checklist. gamma = 0 marks every check that needs
// a finite closing time as skipped (the loop never closes); any positive
// value runs the standard lattice, whose rates are fixed by the checks
// themselves. cli_path is the binary the determinism check reruns; leave
// scratch_dir empty to use the system temp directory.
struct ValidateOptions {
    std::string cli_path;
    double gamma = 1.0;
    std::string scratch_dir;
};

// The full checklist in order, one entry per checked clause.
std::vector<CriterionResult> run_criteria(const ValidateOptions& opt);

bool all_passed(const std::vector<CriterionResult>& results);

// Individual checks, exposed so the test binary can run them selectively.
CriterionResult criterion_unitary_phase_branch();
CriterionResult criterion_unitary_phase_fock();
CriterionResult criterion_theta_alpha_independence();
CriterionResult criterion_first_leg_closed_forms();
CriterionResult criterion_loop_closure();
CriterionResult criterion_loop_phase_closed_form();
CriterionResult criterion_damping_alpha_independence();
CriterionResult criterion_damping_cubic_scaling();
// Engine-equivalence lattice and the density-invariant audit share one set
// of Fock runs; returned as (equivalence, invariants).
std::pair<CriterionResult, CriterionResult> criterion_engine_lattice();
CriterionResult criterion_dyadic_identity();
CriterionResult criterion_thermal_cross_check();
CriterionResult criterion_variance_monotonicity();
CriterionResult criterion_fringe_pattern();
CriterionResult criterion_pure_state_inversion();
CriterionResult criterion_trotter_convergence();
CriterionResult criterion_determinism(const std::string& cli_path,
                                      const std::string& scratch_dir);

}  // namespace phasekick
