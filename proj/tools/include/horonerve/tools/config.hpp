#pragma once
// Instance files: one `key = value` pair per line, '#' starts a comment.
//
//   family     = free | free-abelian | free-product
//   ranks      = 2          (free-product: one rank per free-abelian factor)
//   names      = x y t      (optional generator names)
//   peripheral = 1 0        (one flag per atom; free(k) has k atoms)
//   rg, lmax, mmax, schedule, dimcap, seed
//   excision_n             (stage of the X_n = X_{n+1} ∪ H filtration)
//   rips_rg, rips_lmax, rips_dmax

#include "horonerve/cover.hpp"
#include "horonerve/group.hpp"
#include "horonerve/horoball.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace horonerve::tools {

struct InstanceConfig {
    std::string name;
    GroupFamily family = GroupFamily::Free;
    std::vector<int> ranks;
    std::vector<std::string> names;
    std::vector<bool> peripheral;
    int rg = 3;
    int lmax = 3;
    std::optional<int> mmax;
    Schedule schedule;
    int dimcap = 3;
    std::uint64_t seed = 0;
    std::optional<int> excision_n;
    std::optional<int> rips_rg, rips_lmax, rips_dmax;

    GroupSpec group() const;
    PeripheralSpec peripherals() const;
    AugmentedTruncation truncation() const { return {rg, lmax, mmax}; }
};

/// Throws ConfigError naming the line for malformed input, unknown keys,
/// duplicate keys and out-of-range values.
InstanceConfig parse_instance(const std::string& text, const std::string& source = "<string>");
InstanceConfig load_instance(const std::string& path);

/// Raw pairs in file order; exposed for tests.
std::vector<std::pair<std::string, std::string>> parse_key_values(const std::string& text, const std::string& source);

} // namespace horonerve::tools
