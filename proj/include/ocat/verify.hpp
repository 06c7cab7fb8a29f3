// Named verification checks, grouped into suites. The CLI `verify` command
// and the acceptance harness both run these.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ocat/catprop.hpp"
#include "ocat/module.hpp"

namespace ocat {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 20240817;
    int threads = 1;  // reserved; checks are deterministic regardless
};

// Shared operad/prop caches so that a full run builds each truncation once.
class VerifyContext {
  public:
    explicit VerifyContext(VerifyOptions opt = {}) : opt_(opt) {}
    const VerifyOptions& options() const { return opt_; }
    CatPtr cat(const std::string& operad, int nmax);

  private:
    VerifyOptions opt_;
    std::map<std::pair<std::string, int>, CatPtr> cache_;
};

using Suite = std::vector<CheckResult> (*)(VerifyContext&);

// suite names: operads, leibniz, mutilde, deltaproj, reflection, operadnat,
// convolution, homology, groupside
const std::vector<std::string>& suite_names();
std::vector<CheckResult> run_suite(VerifyContext& ctx, const std::string& name);
std::vector<CheckResult> run_all(VerifyContext& ctx);

}  // namespace ocat
