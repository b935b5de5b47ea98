#include "lfnp/scan.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "lfnp/dwork.hpp"
#include "lfnp/errors.hpp"
#include "lfnp/hasse.hpp"

namespace lfnp::scan {

using nlohmann::json;

namespace {

std::string join_u32(const std::vector<std::uint32_t>& v, char sep) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << sep;
        os << v[i];
    }
    return os.str();
}

} // namespace

std::string csv_header() {
    return "# lfnp-scan-v1\n"
           "idx,coeffs,nondegenerate,hasse_value,hasse_resolved_value,hasse_ordinary,"
           "chain_dets,chain_ordinary,ord_a1,ord_top,brute_ordinary,"
           "agree_hasse_chain,agree_chain_brute,agree_hasse_brute,formula_flags,micros";
}

std::string VerdictRecord::csv_line() const {
    std::ostringstream os;
    os << idx << "," << join_u32(coeffs, ';') << "," << (nondegenerate ? 1 : 0) << ",";
    if (has_hasse) os << hasse_value;
    os << ",";
    if (has_hasse && coeffs.size() == 4) os << hasse_resolved_value;
    os << ",";
    if (has_hasse) os << (hasse_ordinary ? 1 : 0);
    os << ",";
    os << join_u32(chain_dets, ';') << ",";
    if (has_chain) os << (chain_ordinary ? 1 : 0);
    os << "," << ord_a1 << "," << ord_top << ",";
    if (has_brute) os << (brute_ordinary ? 1 : 0);
    os << "," << (agree_hasse_chain ? 1 : 0) << "," << (agree_chain_brute ? 1 : 0) << ","
       << (agree_hasse_brute ? 1 : 0) << "," << formula_flags << "," << micros;
    return os.str();
}

std::string VerdictRecord::json_line() const {
    json j;
    j["schema"] = "lfnp-scan-v1";
    j["idx"] = idx;
    j["coeffs"] = coeffs;
    j["nondegenerate"] = nondegenerate;
    if (has_hasse) {
        j["hasse_value"] = hasse_value;
        if (coeffs.size() == 4) j["hasse_resolved_value"] = hasse_resolved_value;
        j["hasse_ordinary"] = hasse_ordinary;
    }
    if (has_chain) {
        j["chain_dets"] = chain_dets;
        j["chain_ordinary"] = chain_ordinary;
    }
    if (has_brute) {
        j["ord_a1"] = ord_a1;
        j["ord_top"] = ord_top;
        j["brute_ordinary"] = brute_ordinary;
    }
    j["agree_hasse_chain"] = agree_hasse_chain;
    j["agree_chain_brute"] = agree_chain_brute;
    j["agree_hasse_brute"] = agree_hasse_brute;
    if (!formula_flags.empty()) j["formula_flags"] = formula_flags;
    j["micros"] = micros;
    return j.dump();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::uint32_t> parse_u32s(const std::string& s, char sep) {
    std::vector<std::uint32_t> out;
    if (s.empty()) return out;
    for (const auto& piece : split(s, sep))
        out.push_back(static_cast<std::uint32_t>(std::stoul(piece)));
    return out;
}

std::optional<VerdictRecord> record_from_csv(const std::string& line) {
    auto f = split(line, ',');
    if (f.size() != 16) return std::nullopt;
    try {
        VerdictRecord r;
        r.idx = static_cast<std::size_t>(std::stoull(f[0]));
        r.coeffs = parse_u32s(f[1], ';');
        r.nondegenerate = f[2] == "1";
        r.has_hasse = !f[3].empty();
        if (r.has_hasse) r.hasse_value = static_cast<std::uint32_t>(std::stoul(f[3]));
        if (!f[4].empty()) r.hasse_resolved_value = static_cast<std::uint32_t>(std::stoul(f[4]));
        if (!f[5].empty()) r.hasse_ordinary = f[5] == "1";
        r.chain_dets = parse_u32s(f[6], ';');
        r.has_chain = !f[7].empty();
        if (r.has_chain) r.chain_ordinary = f[7] == "1";
        r.ord_a1 = f[8];
        r.ord_top = f[9];
        r.has_brute = !f[10].empty();
        if (r.has_brute) r.brute_ordinary = f[10] == "1";
        r.agree_hasse_chain = f[11] == "1";
        r.agree_chain_brute = f[12] == "1";
        r.agree_hasse_brute = f[13] == "1";
        r.formula_flags = f[14];
        r.micros = std::stol(f[15]);
        return r;
    } catch (...) {
        return std::nullopt;
    }
}

std::optional<VerdictRecord> record_from_json(const std::string& line) {
    try {
        auto j = json::parse(line);
        VerdictRecord r;
        r.idx = j.at("idx").get<std::size_t>();
        r.coeffs = j.at("coeffs").get<std::vector<std::uint32_t>>();
        r.nondegenerate = j.at("nondegenerate").get<bool>();
        if (j.contains("hasse_value")) {
            r.has_hasse = true;
            r.hasse_value = j["hasse_value"].get<std::uint32_t>();
            if (j.contains("hasse_resolved_value"))
                r.hasse_resolved_value = j["hasse_resolved_value"].get<std::uint32_t>();
            r.hasse_ordinary = j.value("hasse_ordinary", false);
        }
        if (j.contains("chain_ordinary")) {
            r.has_chain = true;
            r.chain_dets = j.value("chain_dets", std::vector<std::uint32_t>{});
            r.chain_ordinary = j["chain_ordinary"].get<bool>();
        }
        if (j.contains("brute_ordinary")) {
            r.has_brute = true;
            r.ord_a1 = j.value("ord_a1", "");
            r.ord_top = j.value("ord_top", "");
            r.brute_ordinary = j["brute_ordinary"].get<bool>();
        }
        r.agree_hasse_chain = j.value("agree_hasse_chain", true);
        r.agree_chain_brute = j.value("agree_chain_brute", true);
        r.agree_hasse_brute = j.value("agree_hasse_brute", true);
        r.formula_flags = j.value("formula_flags", "");
        r.micros = j.value("micros", 0L);
        return r;
    } catch (...) {
        return std::nullopt;
    }
}

std::vector<std::vector<std::uint32_t>> enumerate_tuples(const ScanConfig& cfg) {
    if (!cfg.tuples.empty()) return cfg.tuples;
    std::uint64_t qb = 1;
    for (std::uint32_t i = 0; i < cfg.a; ++i) qb *= cfg.p;
    const std::uint64_t units = qb - 1;
    std::uint64_t total = 1;
    for (int i = 0; i <= cfg.n; ++i) {
        if (total > 100'000'000ull / units + 1)
            throw resource_error("run_scan: tuple space too large");
        total *= units;
    }
    std::vector<std::vector<std::uint32_t>> tuples;
    tuples.reserve(static_cast<std::size_t>(total));
    std::vector<std::uint32_t> cur(static_cast<std::size_t>(cfg.n + 1), 1);
    for (;;) {
        tuples.push_back(cur);
        int pos = 0;
        while (pos <= cfg.n && cur[static_cast<std::size_t>(pos)] == units) {
            cur[static_cast<std::size_t>(pos)] = 1;
            ++pos;
        }
        if (pos > cfg.n) break;
        cur[static_cast<std::size_t>(pos)]++;
    }
    if (cfg.sample && *cfg.sample < tuples.size()) {
        std::vector<std::size_t> order(tuples.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::mt19937_64 rng(cfg.seed);
        std::shuffle(order.begin(), order.end(), rng);
        order.resize(*cfg.sample);
        std::sort(order.begin(), order.end());
        std::vector<std::vector<std::uint32_t>> picked;
        picked.reserve(order.size());
        for (std::size_t i : order) picked.push_back(tuples[i]);
        return picked;
    }
    return tuples;
}

std::string val_str(const exact::Valuation& v) { return v.str(); }

} // namespace

std::uint64_t scan_cost_estimate(const ScanConfig& cfg) {
    std::uint32_t kmax = cfg.mode == expsum::WitnessMode::full || cfg.deep_full > 0
                             ? (1u << (cfg.n + 1))
                             : static_cast<std::uint32_t>(cfg.n) + 2;
    std::uint64_t tables = 0, per_tuple = 0;
    std::uint64_t qk = 1;
    for (std::uint32_t k = 1; k <= kmax; ++k) {
        tables += expsum::salie_build_cost(cfg.p, cfg.a, k);
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < cfg.a * k; ++i) q *= cfg.p;
        qk = q;
        per_tuple += q * cfg.n * cfg.p * cfg.p;
    }
    (void)qk;
    std::uint64_t qb = 1;
    for (std::uint32_t i = 0; i < cfg.a; ++i) qb *= cfg.p;
    std::uint64_t ntuples = cfg.tuples.empty() ? 1 : cfg.tuples.size();
    if (cfg.tuples.empty()) {
        ntuples = 1;
        for (int i = 0; i <= cfg.n; ++i) ntuples *= (qb - 1);
        if (cfg.sample && *cfg.sample < ntuples) ntuples = *cfg.sample;
    }
    return tables + ntuples * per_tuple;
}

ScanSummary run_scan(const ScanConfig& cfg) {
    if (cfg.n < 1) throw usage_error("run_scan: n >= 1");
    const std::uint64_t cost = scan_cost_estimate(cfg);
    if (cost > cfg.op_cap && !cfg.force)
        throw resource_error("run_scan: estimated cost " + std::to_string(cost) +
                             " exceeds the cap " + std::to_string(cfg.op_cap) +
                             "; rerun with --force or raise --cap");

    auto tuples = enumerate_tuples(cfg);
    auto base = ff::FieldTower::build(cfg.p, cfg.a, 1);

    // resume: trust an existing journal for the tuples it already covers
    std::vector<bool> done(tuples.size(), false);
    std::vector<VerdictRecord> records(tuples.size());
    std::size_t preloaded = 0;
    if (!cfg.out_path.empty() && std::filesystem::exists(cfg.out_path)) {
        std::ifstream is(cfg.out_path);
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("idx,", 0) == 0) continue;
            auto rec = cfg.format == ScanConfig::Format::jsonl ? record_from_json(line)
                                                               : record_from_csv(line);
            if (!rec) continue; // partial write tail
            if (rec->idx >= tuples.size() || rec->coeffs != tuples[rec->idx]) continue;
            if (!done[rec->idx]) ++preloaded;
            done[rec->idx] = true;
            records[rec->idx] = std::move(*rec);
        }
    }

    expsum::SalieCache cache(cfg.p, cfg.a, cfg.cache_dir, cfg.op_cap);
    const std::uint32_t kneed = cfg.mode == expsum::WitnessMode::full || cfg.deep_full > 0
                                    ? (1u << (cfg.n + 1))
                                    : static_cast<std::uint32_t>(cfg.n) + 2;
    if (cfg.with_brute)
        for (std::uint32_t k = 1; k <= kneed; ++k) cache.get(k); // prebuild, single thread

    dwork::ChainBlock chain_block;
    if (cfg.with_chain && cfg.n >= 2)
        chain_block = dwork::chain_block_matrix(cfg.n, cfg.p, std::max(cfg.n - 1, 1));

    // first-principles n=3 comparator: h_p(Delta',1) * det of the weight-2
    // interior block (the object the formula ambiguities are resolved against)
    exact::FpPoly oracle_n3;
    if (cfg.with_hasse && cfg.n == 3) {
        auto Mint = dwork::interior_block(3, cfg.p, {dwork::ConeSpec::Kind::interior, {}}, 2);
        std::vector<std::vector<exact::FpPoly>> M7(
            7, std::vector<exact::FpPoly>(7, exact::FpPoly(cfg.p, 4)));
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j) M7[i][j] = Mint[i + 1][j + 1];
        oracle_n3 = hasse::hasse_n3_h1_symbolic(cfg.p) * exact::fppoly_det(M7);
    }

    std::atomic<std::size_t> next{0};
    std::mutex journal_mu;
    std::ofstream journal;
    if (!cfg.out_path.empty()) {
        std::filesystem::path fp(cfg.out_path);
        if (fp.has_parent_path()) std::filesystem::create_directories(fp.parent_path());
        journal.open(cfg.out_path, std::ios::app);
        if (!journal) throw resource_error("run_scan: cannot open journal " + cfg.out_path);
        if (preloaded == 0 && cfg.format == ScanConfig::Format::csv)
            journal << csv_header() << "\n";
    }

    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tuples.size()) return;
            if (done[i]) continue;
            auto t0 = std::chrono::steady_clock::now();
            VerdictRecord rec;
            rec.idx = i;
            rec.coeffs = tuples[i];
            auto nd = hasse::nondegenerate(cfg.n, *base, rec.coeffs);
            rec.nondegenerate = nd.nondegenerate;

            if (cfg.with_hasse && (cfg.n == 2 || cfg.n == 3)) {
                rec.has_hasse = true;
                if (cfg.n == 2) {
                    rec.hasse_value =
                        hasse::hasse_n2(*base, rec.coeffs[0], rec.coeffs[1], rec.coeffs[2]);
                } else {
                    rec.hasse_value = hasse::hasse_n3(*base, rec.coeffs, hasse::HVariant::printed);
                    rec.hasse_resolved_value = dwork::eval_fq(oracle_n3, *base, rec.coeffs);
                }
                rec.hasse_ordinary = rec.hasse_value != 0;
            }
            if (cfg.with_chain && cfg.n >= 2) {
                rec.has_chain = true;
                auto cv = dwork::chain_verdict(chain_block, *base, rec.coeffs);
                rec.chain_dets = cv.dets;
                rec.chain_ordinary = cv.ordinary;
            }
            if (cfg.with_brute && rec.nondegenerate) {
                rec.has_brute = true;
                expsum::FamilyCoeffs fc{cfg.n, cfg.p, cfg.a, rec.coeffs};
                auto w = expsum::ordinarity_witness(fc, cfg.mode, cache);
                rec.brute_ordinary = w.ordinary;
                for (const auto& [x, v] : w.measured) {
                    if (x == 1) rec.ord_a1 = val_str(v);
                    if (x == static_cast<std::size_t>(cfg.n) + 2) rec.ord_top = val_str(v);
                }
            }
            if (rec.has_hasse && rec.has_chain)
                rec.agree_hasse_chain = rec.hasse_ordinary == rec.chain_ordinary;
            if (rec.nondegenerate) {
                if (rec.has_chain && rec.has_brute)
                    rec.agree_chain_brute = rec.chain_ordinary == rec.brute_ordinary;
                if (rec.has_hasse && rec.has_brute)
                    rec.agree_hasse_brute = rec.hasse_ordinary == rec.brute_ordinary;
            }
            if (cfg.n == 3 && !rec.agree_hasse_chain)
                rec.formula_flags = rec.nondegenerate ? "hasse-chain-mismatch:nondegenerate"
                                                      : "hasse-chain-mismatch:degenerate";
            rec.micros = static_cast<long>(std::chrono::duration_cast<std::chrono::microseconds>(
                                               std::chrono::steady_clock::now() - t0)
                                               .count());
            {
                std::lock_guard<std::mutex> lock(journal_mu);
                if (journal.is_open()) {
                    journal << (cfg.format == ScanConfig::Format::csv ? rec.csv_line()
                                                                      : rec.json_line())
                            << "\n";
                    journal.flush();
                }
            }
            records[i] = std::move(rec);
        }
    };

    const int nthreads = std::max(1, cfg.threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // deep validation: full-mode witness on the first deep_full nondegenerate tuples
    ScanSummary sum;
    sum.n = cfg.n;
    sum.p = cfg.p;
    sum.a = cfg.a;
    std::size_t deep_left = cfg.deep_full;
    for (std::size_t i = 0; i < tuples.size() && deep_left > 0; ++i) {
        const VerdictRecord& rec = records[i];
        if (!rec.nondegenerate || !rec.has_brute) continue;
        expsum::FamilyCoeffs fc{cfg.n, cfg.p, cfg.a, tuples[i]};
        auto w = expsum::ordinarity_witness(fc, expsum::WitnessMode::full, cache);
        bool ok = w.ordinary == rec.brute_ordinary;
        auto slopes = w.np.unit_slopes();
        for (std::size_t s = 0; ok && s < slopes.size(); ++s)
            if (slopes[s] + slopes[slopes.size() - 1 - s] != exact::BigRat(cfg.n + 1)) ok = false;
        sum.deep_checked++;
        if (ok) sum.deep_ok++;
        --deep_left;
    }

    for (std::size_t i = 0; i < tuples.size(); ++i) {
        sum.tuples++;
        const auto& rec = records[i];
        if (rec.nondegenerate) sum.nondegenerate++;
        if (rec.has_brute && rec.brute_ordinary) sum.ordinary++;
        if (!rec.agree_hasse_brute) sum.mismatch_hasse_brute++;
        if (!rec.agree_chain_brute) sum.mismatch_chain_brute++;
        if (!rec.agree_hasse_chain) sum.mismatch_hasse_chain++;
        if (!rec.formula_flags.empty()) {
            sum.formula_discrepancies++;
            if (rec.formula_flags.find(":degenerate") != std::string::npos)
                sum.formula_on_degenerate++;
        }
    }
    sum.empty_hasse_domain = sum.nondegenerate == 0;
    // hasse<->chain mismatches on degenerate tuples carry no claim (the Hasse
    // polynomial is only pinned on the nondegenerate locus); they are
    // recorded but not failures
    sum.mandatory_ok = sum.mismatch_chain_brute == 0 && sum.deep_checked == sum.deep_ok;
    if (cfg.n == 2) sum.mandatory_ok = sum.mandatory_ok && sum.mismatch_hasse_brute == 0;
    if (cfg.n == 3)
        sum.mandatory_ok =
            sum.mandatory_ok && sum.formula_discrepancies == sum.formula_on_degenerate;

    // rewrite the journal in index order (deterministic final stream)
    if (!cfg.out_path.empty()) {
        journal.close();
        std::string tmp = cfg.out_path + ".tmp";
        {
            std::ofstream os(tmp, std::ios::trunc);
            if (cfg.format == ScanConfig::Format::csv) os << csv_header() << "\n";
            for (const auto& rec : records)
                os << (cfg.format == ScanConfig::Format::csv ? rec.csv_line() : rec.json_line())
                   << "\n";
        }
        std::filesystem::rename(tmp, cfg.out_path);
    }

    sum.records = std::move(records);
    return sum;
}

std::vector<std::string> build_caches(std::uint32_t p, std::uint32_t a, std::uint32_t kmax,
                                      const std::string& dir, std::uint64_t op_cap) {
    if (dir.empty()) throw usage_error("build_caches: cache directory required");
    expsum::SalieCache cache(p, a, dir, op_cap);
    std::vector<std::string> paths;
    for (std::uint32_t k = 1; k <= kmax; ++k) {
        cache.get(k);
        paths.push_back(cache.file_path(k));
    }
    return paths;
}

} // namespace lfnp::scan
