#ifndef UDW_VERIFY_HPP
#define UDW_VERIFY_HPP

#include <string>
#include <vector>

namespace udw {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured numbers
  double seconds = 0.0;
};

// Acceptance checks 1..9. Each one runs its computation from scratch and
// never throws; a quadrature failure is reported as FAIL with the message.
CriterionResult run_criterion(int id);

// kernels, causality, tails, huygens, appendixC, or all.
const std::vector<std::string>& suite_names();
std::vector<int> suite_criteria(const std::string& suite);  // throws std::invalid_argument

// "PASS [3] name: detail (1.2 s)"
std::string format_result(const CriterionResult& r);

}  // namespace udw

#endif
