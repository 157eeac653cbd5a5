#include "edgeshard/share_io.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <map>

#include "edgeshard/chunking.hpp"
#include "edgeshard/crc32.hpp"
#include "edgeshard/errors.hpp"

namespace edgeshard {
namespace {

void put_u32(Bytes& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_u64(Bytes& out, std::uint64_t v) {
    put_u32(out, static_cast<std::uint32_t>(v >> 32));
    put_u32(out, static_cast<std::uint32_t>(v));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

std::uint64_t get_u64(const std::uint8_t* p) {
    return (std::uint64_t(get_u32(p)) << 32) | get_u32(p + 4);
}

Bytes encode_header(const Share& share) {
    Bytes out;
    out.reserve(kShareHeaderSize);
    out.insert(out.end(), kShareMagic, kShareMagic + 4);
    out.push_back(kShareFormatVersion);
    out.insert(out.end(), share.secret_id.bytes.begin(), share.secret_id.bytes.end());
    out.push_back(share.policy.k);
    out.push_back(share.policy.n);
    out.push_back(share.x);
    put_u32(out, share.chunk_index);
    put_u32(out, share.chunk_size);
    put_u64(out, share.payload.size());
    return out;
}

}  // namespace

std::uint32_t Share::compute_checksum() const {
    const Bytes header = encode_header(*this);
    std::uint32_t state = crc32_init();
    state = crc32_update(state, header);
    state = crc32_update(state, payload);
    return crc32_final(state);
}

Bytes encode_share(const Share& share) {
    Bytes out = encode_header(share);
    out.insert(out.end(), share.payload.begin(), share.payload.end());
    put_u32(out, share.checksum);
    return out;
}

Share decode_share(std::span<const std::uint8_t> buffer, std::size_t* consumed) {
    if (buffer.size() < kShareOverhead) throw CorruptShare("share record truncated");
    if (std::memcmp(buffer.data(), kShareMagic, 4) != 0)
        throw CorruptShare("bad share magic");
    if (buffer[4] != kShareFormatVersion)
        throw CorruptShare("unsupported share format version " + std::to_string(buffer[4]));

    Share share;
    std::copy(buffer.begin() + 5, buffer.begin() + 21, share.secret_id.bytes.begin());
    share.policy.k = buffer[21];
    share.policy.n = buffer[22];
    share.x = buffer[23];
    share.chunk_index = get_u32(buffer.data() + 24);
    share.chunk_size = get_u32(buffer.data() + 28);
    const std::uint64_t payload_len = get_u64(buffer.data() + 32);

    const std::uint64_t total = kShareOverhead + payload_len;
    if (buffer.size() < total) throw CorruptShare("share record truncated");
    share.payload.assign(buffer.begin() + kShareHeaderSize,
                         buffer.begin() + kShareHeaderSize + payload_len);
    share.checksum = get_u32(buffer.data() + kShareHeaderSize + payload_len);

    const std::uint32_t actual = crc32(buffer.subspan(0, kShareHeaderSize + payload_len));
    if (actual != share.checksum) throw CorruptShare("share CRC mismatch");

    if (consumed) *consumed = static_cast<std::size_t>(total);
    return share;
}

std::vector<Share> decode_share_stream(std::span<const std::uint8_t> buffer) {
    std::vector<Share> shares;
    while (!buffer.empty()) {
        std::size_t consumed = 0;
        shares.push_back(decode_share(buffer, &consumed));
        buffer = buffer.subspan(consumed);
    }
    return shares;
}

namespace {

Bytes read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return data;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot create " + path.string());
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) throw Error("write failed for " + path.string());
}

std::string share_file_name(unsigned x) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "share-%03u.esh", x);
    return buf;
}

}  // namespace

ShareFileSet write_share_files(std::span<const std::uint8_t> data, const SharePolicy& policy,
                               std::uint32_t chunk_size, RandomSource& rng,
                               const std::filesystem::path& dir) {
    policy.ensure_valid();
    auto chunks = chunk_data(data, chunk_size);
    if (chunks.empty()) chunks.emplace_back();  // empty input: one empty record per x

    SecretId id;
    rng.fill(id.bytes);

    std::vector<Bytes> file_bodies(policy.n);
    for (std::uint32_t ci = 0; ci < chunks.size(); ++ci) {
        const auto shares = split_chunk(id, ci, chunk_size, chunks[ci], policy, rng);
        for (std::uint8_t i = 0; i < policy.n; ++i) {
            const Bytes record = encode_share(shares[i]);
            file_bodies[i].insert(file_bodies[i].end(), record.begin(), record.end());
        }
    }

    ShareFileSet set;
    set.secret_id = id;
    std::filesystem::create_directories(dir);
    for (std::uint8_t i = 0; i < policy.n; ++i) {
        const auto path = dir / share_file_name(i + 1u);
        write_file(path, file_bodies[i]);
        set.files.push_back(path);
    }
    return set;
}

Bytes reconstruct_from_files(std::span<const std::filesystem::path> files,
                             std::vector<std::string>* warnings, SecretId* id_out) {
    bool have_id = false;
    SecretId id;
    SharePolicy policy;
    std::map<std::uint32_t, std::vector<Share>> by_chunk;

    for (const auto& path : files) {
        const Bytes body = read_file(path);
        std::span<const std::uint8_t> rest(body);
        while (!rest.empty()) {
            std::size_t consumed = 0;
            Share share;
            try {
                share = decode_share(rest, &consumed);
            } catch (const CorruptShare& e) {
                if (warnings)
                    warnings->push_back(path.string() + ": " + e.what() + ", skipped");
                break;  // cannot resync inside a damaged file
            }
            rest = rest.subspan(consumed);
            if (!have_id) {
                id = share.secret_id;
                policy = share.policy;
                have_id = true;
            } else if (share.secret_id != id) {
                throw InconsistentShares("share files from different secrets: " + id.hex() +
                                         " vs " + share.secret_id.hex());
            }
            by_chunk[share.chunk_index].push_back(std::move(share));
        }
    }

    if (!have_id) throw InsufficientShares(0, 2);
    if (id_out) *id_out = id;

    const std::uint32_t chunk_count = by_chunk.rbegin()->first + 1;
    Bytes out;
    for (std::uint32_t ci = 0; ci < chunk_count; ++ci) {
        auto it = by_chunk.find(ci);
        if (it == by_chunk.end()) throw InsufficientShares(0, policy.k);
        // Drop duplicate x's (the same file listed twice) before reconstructing.
        auto& shares = it->second;
        std::sort(shares.begin(), shares.end(),
                  [](const Share& a, const Share& b) { return a.x < b.x; });
        shares.erase(std::unique(shares.begin(), shares.end(),
                                 [](const Share& a, const Share& b) { return a.x == b.x; }),
                     shares.end());
        const Bytes chunk = reconstruct(std::span<const Share>(shares), policy);
        out.insert(out.end(), chunk.begin(), chunk.end());
    }
    return out;
}

}  // namespace edgeshard
