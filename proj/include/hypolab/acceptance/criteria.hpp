#pragma once

#include <string>
#include <vector>

namespace hypolab::accept {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the full acceptance suite (criteria 1-13) and returns one result per
// criterion, in order.  Each criterion pins its own tolerances; failures
// are reported, never thrown.
std::vector<CriterionResult> run_acceptance(int threads = 4);

// Single criterion by id (1-based) for selective reruns.
CriterionResult run_criterion(int id, int threads = 4);

}  // namespace hypolab::accept
