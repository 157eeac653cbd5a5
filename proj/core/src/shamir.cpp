#include "edgeshard/shamir.hpp"

#include <algorithm>

#include "edgeshard/errors.hpp"
#include "edgeshard/gf256.hpp"

namespace edgeshard {

void SharePolicy::ensure_valid() const {
    if (!valid()) throw InvalidPolicy(k, n);
}

std::vector<std::uint8_t> lagrange_weights_at_zero(std::span<const std::uint8_t> xs) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            if (xs[i] == xs[j]) throw DuplicateShare(xs[i]);
        }
    }
    std::vector<std::uint8_t> weights(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        // w_i = prod_{j != i} x_j / (x_j - x_i); subtraction is xor here.
        std::uint8_t w = 1;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            w = gf::mul(w, gf::mul(xs[j], gf::inv(gf::add(xs[j], xs[i]))));
        }
        weights[i] = w;
    }
    return weights;
}

std::vector<Share> split_chunk(const SecretId& id, std::uint32_t chunk_index,
                               std::uint32_t chunk_size, std::span<const std::uint8_t> chunk,
                               const SharePolicy& policy, RandomSource& rng) {
    policy.ensure_valid();

    std::vector<Share> shares(policy.n);
    for (std::uint8_t i = 0; i < policy.n; ++i) {
        shares[i].secret_id = id;
        shares[i].policy = policy;
        shares[i].x = static_cast<std::uint8_t>(i + 1);
        shares[i].chunk_index = chunk_index;
        shares[i].chunk_size = chunk_size;
        shares[i].payload.resize(chunk.size());
    }

    std::vector<std::uint8_t> coeffs(policy.k);
    for (std::size_t pos = 0; pos < chunk.size(); ++pos) {
        coeffs[0] = chunk[pos];
        for (std::size_t d = 1; d < coeffs.size(); ++d) coeffs[d] = rng.next_byte();
        for (std::uint8_t i = 0; i < policy.n; ++i) {
            shares[i].payload[pos] = gf::poly_eval(coeffs, shares[i].x);
        }
    }

    for (auto& share : shares) share.checksum = share.compute_checksum();
    return shares;
}

std::vector<Share> split(std::span<const std::uint8_t> secret, const SharePolicy& policy,
                         RandomSource& rng) {
    policy.ensure_valid();
    SecretId id;
    rng.fill(id.bytes);
    const auto chunk_size = static_cast<std::uint32_t>(
        std::min<std::size_t>(secret.size(), 0xFFFFFFFFu));
    return split_chunk(id, 0, chunk_size, secret, policy, rng);
}

Bytes reconstruct(std::span<const Share* const> shares, const SharePolicy& expected) {
    expected.ensure_valid();
    if (shares.size() < expected.k) throw InsufficientShares(shares.size(), expected.k);

    const Share& first = *shares.front();
    for (std::size_t i = 0; i < shares.size(); ++i) {
        for (std::size_t j = i + 1; j < shares.size(); ++j) {
            if (shares[i]->x == shares[j]->x) throw DuplicateShare(shares[i]->x);
        }
    }
    for (const Share* s : shares) {
        if (s->x == 0) throw CorruptShare("share with x = 0");
        if (s->secret_id != first.secret_id)
            throw InconsistentShares("shares from different secrets: " + s->secret_id.hex() +
                                     " vs " + first.secret_id.hex());
        if (s->chunk_index != first.chunk_index)
            throw CorruptShare("mixed chunk indices in reconstruction");
        if (s->policy != expected)
            throw CorruptShare("share policy does not match the expected (k, n)");
        if (s->payload.size() != first.payload.size())
            throw CorruptShare("share payload lengths differ");
        if (!s->checksum_ok()) throw CorruptShare("share checksum mismatch");
    }

    // Deterministic choice among extras: lowest k x-coordinates.
    std::vector<const Share*> picked(shares.begin(), shares.end());
    std::sort(picked.begin(), picked.end(),
              [](const Share* a, const Share* b) { return a->x < b->x; });
    picked.resize(expected.k);

    std::vector<std::uint8_t> xs(picked.size());
    for (std::size_t i = 0; i < picked.size(); ++i) xs[i] = picked[i]->x;
    const auto weights = lagrange_weights_at_zero(xs);

    Bytes out(first.payload.size(), 0);
    for (std::size_t i = 0; i < picked.size(); ++i) {
        const std::uint8_t w = weights[i];
        if (w == 0) continue;
        const std::uint8_t log_w = gf::detail::kLog[w];
        const Bytes& payload = picked[i]->payload;
        for (std::size_t pos = 0; pos < out.size(); ++pos) {
            const std::uint8_t b = payload[pos];
            if (b != 0) out[pos] ^= gf::detail::kExp[log_w + gf::detail::kLog[b]];
        }
    }
    return out;
}

Bytes reconstruct(std::span<const Share> shares, const SharePolicy& expected) {
    std::vector<const Share*> ptrs(shares.size());
    for (std::size_t i = 0; i < shares.size(); ++i) ptrs[i] = &shares[i];
    return reconstruct(std::span<const Share* const>(ptrs), expected);
}

}  // namespace edgeshard
