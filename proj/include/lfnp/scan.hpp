// Scan orchestration: enumerate coefficient tuples, run the predictors and
// oracles, emit one verdict record per tuple, and summarize agreements.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lfnp/expsum.hpp"

namespace lfnp::scan {

struct ScanConfig {
    int n = 2;
    std::uint32_t p = 5, a = 1;
    expsum::WitnessMode mode = expsum::WitnessMode::breakpoints;
    std::optional<std::size_t> sample;               // deterministic random subset
    std::vector<std::vector<std::uint32_t>> tuples;  // explicit list (overrides enumeration)
    bool with_hasse = true;
    bool with_chain = true;
    bool with_brute = true;
    std::size_t deep_full = 0; // additionally run full mode on this many nondegenerate tuples
    std::string out_path;      // journal file; empty = in-memory only
    enum class Format { csv, jsonl } format = Format::csv;
    std::string cache_dir;
    int threads = 1;
    std::uint64_t op_cap = 10'000'000'000ull;
    bool force = false;
    std::uint64_t seed = 0x5eedULL;
};

struct VerdictRecord {
    std::size_t idx = 0;
    std::vector<std::uint32_t> coeffs;
    bool nondegenerate = false;
    bool has_hasse = false, has_chain = false, has_brute = false;
    std::uint32_t hasse_value = 0;          // n=2: H(a,b,c); n=3: printed variant
    std::uint32_t hasse_resolved_value = 0; // n=3 only
    bool hasse_ordinary = false;
    std::vector<std::uint32_t> chain_dets;
    bool chain_ordinary = false;
    std::string ord_a1, ord_top; // measured break-point valuations
    bool brute_ordinary = false;
    bool agree_hasse_chain = true, agree_chain_brute = true, agree_hasse_brute = true;
    std::string formula_flags; // "h45-printed-mismatch[,resolved-ok|,resolved-mismatch]"
    long micros = 0;

    std::string csv_line() const;
    std::string json_line() const;
};

/// versioned journal header
std::string csv_header();

struct ScanSummary {
    int n = 0;
    std::uint32_t p = 0, a = 1;
    std::size_t tuples = 0, nondegenerate = 0, ordinary = 0;
    std::size_t mismatch_hasse_brute = 0, mismatch_chain_brute = 0, mismatch_hasse_chain = 0;
    std::size_t formula_discrepancies = 0, formula_resolved_ok = 0;
    std::size_t deep_checked = 0, deep_ok = 0;
    bool empty_hasse_domain = false;
    bool mandatory_ok = true; // hasse<->brute (n=2), chain<->brute, discrepancies documented
    std::vector<VerdictRecord> records; // idx order
};

std::uint64_t scan_cost_estimate(const ScanConfig& cfg);

/// Deterministic, resumable scan.  Reruns with the same config produce the
/// same record stream (timing field aside); an existing journal is trusted
/// for the tuples it already covers.
ScanSummary run_scan(const ScanConfig& cfg);

/// Build and persist the Salie tables for k = 1..kmax; returns file paths.
std::vector<std::string> build_caches(std::uint32_t p, std::uint32_t a, std::uint32_t kmax,
                                      const std::string& dir,
                                      std::uint64_t op_cap = 10'000'000'000ull);

} // namespace lfnp::scan
