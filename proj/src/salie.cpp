// Salie-type table construction and the on-disk cache.
#include <cstring>
#include <filesystem>
#include <fstream>

#include "lfnp/errors.hpp"
#include "lfnp/expsum.hpp"

namespace lfnp::expsum {

namespace {

// multiplicities of x + 1/x over the units
std::vector<std::int64_t> fold_counts(const ff::FieldTower& tw) {
    std::vector<std::int64_t> A(tw.size(), 0);
    for (std::uint32_t x = 1; x < tw.size(); ++x) A[tw.add(x, tw.inv(x))]++;
    return A;
}

} // namespace

std::uint64_t salie_build_cost(std::uint32_t p, std::uint32_t a, std::uint32_t k) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < a * k; ++i) q *= p;
    const std::uint64_t naive = q * q;
    const std::uint64_t transform = std::uint64_t(a * k) * q * p * p + q * a * k;
    return std::min(naive, transform);
}

SalieTable build_salie_table_naive(std::shared_ptr<const ff::FieldTower> tower,
                                   std::uint64_t op_cap) {
    const auto& tw = *tower;
    const std::uint32_t p = tw.p(), q = tw.size();
    if (std::uint64_t(q) * q > op_cap)
        throw resource_error("build_salie_table_naive: q^2 exceeds the op cap");
    auto A = fold_counts(tw);
    SalieTable table;
    table.tower = tower;
    table.raw.assign(std::uint64_t(q) * p, 0);
    for (std::uint32_t t = 0; t < q; ++t) {
        std::int64_t* row = table.raw.data() + std::uint64_t(t) * p;
        for (std::uint32_t u = 0; u < q; ++u) {
            if (!A[u]) continue;
            row[tw.trace(tw.mul(t, u))] += A[u];
        }
    }
    return table;
}

SalieTable build_salie_table(std::shared_ptr<const ff::FieldTower> tower,
                             std::uint64_t op_cap) {
    const auto& tw = *tower;
    const std::uint32_t p = tw.p(), q = tw.size(), m = tw.degree();
    if (std::uint64_t(q) * q <= 100'000'000ull)
        return build_salie_table_naive(tower, op_cap);
    if (salie_build_cost(tw.p(), tw.a(), tw.k()) > op_cap)
        throw resource_error("build_salie_table: cost exceeds the op cap; raise --cap");

    // Exact DFT over (Z/p)^m: with A the fold multiplicities,
    // K(t) = Ahat(s(t)) where s(t)_i = Tr(t b_i) in the polynomial basis.
    auto A = fold_counts(tw);
    std::vector<std::int64_t> W(std::uint64_t(q) * p, 0);
    for (std::uint32_t u = 0; u < q; ++u) W[std::uint64_t(u) * p] = A[u];

    std::vector<std::int64_t> tmp(std::uint64_t(p) * p), out(std::uint64_t(p) * p);
    std::uint64_t stride = 1;
    for (std::uint32_t dim = 0; dim < m; ++dim, stride *= p) {
        const std::uint64_t block = stride * p;
        for (std::uint64_t hi = 0; hi < q; hi += block) {
            for (std::uint64_t lo = 0; lo < stride; ++lo) {
                const std::uint64_t base = hi + lo;
                for (std::uint32_t j = 0; j < p; ++j)
                    std::memcpy(&tmp[std::uint64_t(j) * p], &W[(base + j * stride) * p],
                                sizeof(std::int64_t) * p);
                for (std::uint32_t s = 0; s < p; ++s) {
                    std::int64_t* o = &out[std::uint64_t(s) * p];
                    std::memset(o, 0, sizeof(std::int64_t) * p);
                    for (std::uint32_t j = 0; j < p; ++j) {
                        const std::int64_t* in = &tmp[std::uint64_t(j) * p];
                        const std::uint32_t rot = std::uint32_t(std::uint64_t(s) * j % p);
                        // o[c] += in[(c - rot) mod p]
                        for (std::uint32_t c = 0; c < p; ++c) {
                            std::uint32_t src = c >= rot ? c - rot : c + p - rot;
                            o[c] += in[src];
                        }
                    }
                }
                for (std::uint32_t s = 0; s < p; ++s)
                    std::memcpy(&W[(base + s * stride) * p], &out[std::uint64_t(s) * p],
                                sizeof(std::int64_t) * p);
            }
        }
    }

    SalieTable table;
    table.tower = tower;
    table.raw.assign(std::uint64_t(q) * p, 0);
    // basis elements b_i have packed index p^i
    std::vector<std::uint32_t> basis(m);
    {
        std::uint32_t pw = 1;
        for (std::uint32_t i = 0; i < m; ++i, pw *= p) basis[i] = pw;
    }
    for (std::uint32_t t = 0; t < q; ++t) {
        std::uint64_t sigma = 0, pw = 1;
        for (std::uint32_t i = 0; i < m; ++i, pw *= p)
            sigma += std::uint64_t(tw.trace(tw.mul(t, basis[i]))) * pw;
        std::memcpy(&table.raw[std::uint64_t(t) * p], &W[sigma * p], sizeof(std::int64_t) * p);
    }
    return table;
}

// ---- cache files ----

namespace {

void put_u16(std::string& buf, std::uint16_t v) {
    for (int i = 0; i < 2; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_i64(std::string& buf, std::int64_t v) {
    std::uint64_t u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((u >> (8 * i)) & 0xff));
}

struct Reader {
    const std::string& buf;
    std::size_t pos = 0;
    bool fail = false;

    std::uint64_t get(std::size_t bytes) {
        if (pos + bytes > buf.size()) {
            fail = true;
            return 0;
        }
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < bytes; ++i)
            v |= std::uint64_t(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
        pos += bytes;
        return v;
    }
};

std::uint64_t fnv1a(const std::string& data, std::size_t len) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace

void save_salie_table(const SalieTable& table, const std::string& path) {
    const auto& tw = *table.tower;
    const std::uint32_t p = tw.p();
    std::string buf;
    buf.reserve(table.raw.size() * 8 + 64);
    buf += "SALI";
    put_u16(buf, 1);
    put_u32(buf, p);
    put_u32(buf, tw.a());
    put_u32(buf, tw.k());
    put_u32(buf, static_cast<std::uint32_t>(tw.modulus().size()));
    for (std::uint32_t c : tw.modulus()) put_u32(buf, c);
    // canonical (p-1)-coordinate records per element index
    for (std::uint32_t t = 0; t < tw.size(); ++t) {
        const std::int64_t* row = table.raw.data() + std::uint64_t(t) * p;
        const std::int64_t last = row[p - 1];
        for (std::uint32_t c = 0; c + 1 < p; ++c) put_i64(buf, row[c] - last);
    }
    std::uint64_t checksum = fnv1a(buf, buf.size());
    put_i64(buf, static_cast<std::int64_t>(checksum));

    std::filesystem::path fp(path);
    if (fp.has_parent_path()) std::filesystem::create_directories(fp.parent_path());
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw resource_error("save_salie_table: cannot open " + path);
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!os) throw resource_error("save_salie_table: short write to " + path);
}

std::optional<SalieTable> load_salie_table(const std::string& path,
                                           std::shared_ptr<const ff::FieldTower> tower) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return std::nullopt;
    std::string buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (buf.size() < 26) return std::nullopt;
    if (buf.compare(0, 4, "SALI") != 0) return std::nullopt;
    // trailing checksum
    {
        Reader tail{buf, buf.size() - 8};
        std::uint64_t want = tail.get(8);
        if (fnv1a(buf, buf.size() - 8) != want) return std::nullopt;
    }
    Reader r{buf, 4};
    const auto& tw = *tower;
    if (r.get(2) != 1) return std::nullopt;
    if (r.get(4) != tw.p() || r.get(4) != tw.a() || r.get(4) != tw.k()) return std::nullopt;
    std::uint32_t modlen = static_cast<std::uint32_t>(r.get(4));
    if (modlen != tw.modulus().size()) return std::nullopt;
    for (std::uint32_t i = 0; i < modlen; ++i)
        if (r.get(4) != tw.modulus()[i]) return std::nullopt;
    const std::uint32_t p = tw.p();
    const std::uint64_t want_bytes = r.pos + std::uint64_t(tw.size()) * (p - 1) * 8 + 8;
    if (buf.size() != want_bytes) return std::nullopt;

    SalieTable table;
    table.tower = tower;
    table.raw.assign(std::uint64_t(tw.size()) * p, 0);
    for (std::uint32_t t = 0; t < tw.size(); ++t) {
        std::int64_t* row = table.raw.data() + std::uint64_t(t) * p;
        for (std::uint32_t c = 0; c + 1 < p; ++c)
            row[c] = static_cast<std::int64_t>(r.get(8));
        row[p - 1] = 0;
    }
    if (r.fail) return std::nullopt;
    return table;
}

SalieCache::SalieCache(std::uint32_t p, std::uint32_t a, std::string dir,
                       std::uint64_t op_cap, std::uint64_t table_cap,
                       std::uint32_t modulus_index)
    : p_(p), a_(a), modulus_index_(modulus_index), dir_(std::move(dir)), op_cap_(op_cap),
      table_cap_(table_cap) {}

std::string SalieCache::file_path(std::uint32_t k) const {
    if (dir_.empty()) return "";
    return dir_ + "/salie-p" + std::to_string(p_) + "-a" + std::to_string(a_) + "-k" +
           std::to_string(k) + "-m" + std::to_string(modulus_index_) + ".bin";
}

const SalieTable& SalieCache::get(std::uint32_t k) {
    if (k == 0) throw usage_error("SalieCache: k >= 1");
    if (tables_.size() <= k) tables_.resize(k + 1);
    if (tables_[k]) return *tables_[k];
    auto tower = ff::FieldTower::build(p_, a_, k, table_cap_, modulus_index_);
    if (!dir_.empty()) {
        auto loaded = load_salie_table(file_path(k), tower);
        if (loaded) {
            tables_[k] = std::make_unique<SalieTable>(std::move(*loaded));
            return *tables_[k];
        }
    }
    SalieTable built = build_salie_table(tower, op_cap_);
    if (!dir_.empty()) save_salie_table(built, file_path(k));
    tables_[k] = std::make_unique<SalieTable>(std::move(built));
    return *tables_[k];
}

} // namespace lfnp::expsum
