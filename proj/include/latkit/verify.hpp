#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latkit/json_io.hpp"
#include "latkit/order.hpp"

namespace latkit {

struct VerifyConfig {
    /// Exhaustive part: every catalog lattice (or pair) up to this size.
    std::size_t max_size = 5;
    /// Seeded random instances with sizes up to max_size + 2.
    std::size_t samples = 20;
    std::uint64_t seed = 1;
    Limits limits{400, 100000};
    /// Adds wall-clock fields; reports are then no longer byte-identical across runs.
    bool timings = false;
    /// 0 picks the hardware concurrency.
    unsigned threads = 0;
};

struct VerifyReport {
    /// One record per instance, sorted by instance key, then the aggregate record.
    std::vector<json> lines;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
    bool ok() const { return failed == 0; }
};

/// Known theorem ids: glq-iso, ltp-iso, box-closure, m3n5-ltp, dual-ltp, capped-subtensor, eps-hom,
/// diag-cpe, perm-pres.
const std::vector<std::string>& theorem_ids();

/// Throws FormatError for an unknown id. Failing instances carry their inputs as lattice JSON.
VerifyReport run_verify(const std::string& theorem_id, const VerifyConfig& cfg);

}  // namespace latkit
