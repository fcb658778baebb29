#ifndef KMR_VERIFY_HPP
#define KMR_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace kmr {

/// Outcome of one verification suite: ok, plus the first counterexample in
/// human-readable form when not ok.
struct VerifyResult {
  std::string suite;
  bool ok = true;
  std::string detail;
};

struct VerifyParams {
  int max_length = 6;     // Weyl enumeration bound
  int depth = 12;          // loop-degree / height depth for algebra checks
  int rank = 2;            // n of A_{n-1}^(1)
  std::uint64_t seed = 1;  // RNG seed for sampled checks
};

VerifyResult verify_cartan(const VerifyParams& p);
VerifyResult verify_weyl(const VerifyParams& p);
VerifyResult verify_algebra(const VerifyParams& p);
VerifyResult verify_sl2(const VerifyParams& p);
VerifyResult verify_induced(const VerifyParams& p);
VerifyResult verify_characters(const VerifyParams& p);
VerifyResult verify_p1(const VerifyParams& p);

/// Runs the named suite ("cartan", ..., "all").
std::vector<VerifyResult> run_suite(const std::string& name, const VerifyParams& p);

}  // namespace kmr

#endif
