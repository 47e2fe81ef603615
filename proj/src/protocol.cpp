#include "hidden/protocol.hpp"

#include "hidden/errors.hpp"
#include "hidden/gmod.hpp"
#include "hidden/rdh.hpp"

#include <cassert>
#include <stdexcept>

namespace hidden::proto {

namespace {

// Membership of an exact product in the box the DC will lift into.
bool in_lift_box(const GaussianInt& z, const mpz_class& p, LiftMode lift) {
    if (lift == LiftMode::centered)
        return 2 * abs(z.re) < p && 2 * abs(z.im) < p;
    return z.re >= 0 && z.re < p && z.im >= 0 && z.im < p;
}

// The product components are linear in d, so checking both endpoints of
// the data interval covers the whole range.
void check_product_range(const GaussianInt& lambda, const mpz_class& w, const mpz_class& d_lo,
                         const mpz_class& d_hi, const mpz_class& p, LiftMode lift) {
    for (const mpz_class* d : {&d_lo, &d_hi}) {
        GaussianInt prod = lambda * GaussianInt{*d, w};
        if (!in_lift_box(prod, p, lift))
            throw ConfigError("challenge factor violates the wrap-around bound for the "
                              "configured data range");
    }
}

} // namespace

mpz_class EgParams::lambda_component_cap() const {
    if (fixed_lambda) {
        mpz_class a = abs(fixed_lambda->re), b = abs(fixed_lambda->im);
        return a > b ? a : b;
    }
    return lambda_bound;
}

EgDataCollector::EgDataCollector(EgParams params, elgamal::PrivateKey priv, SeededRng rng)
    : params_(std::move(params)), priv_(std::move(priv)), rng_(std::move(rng)) {}

elgamal::Ciphertext EgDataCollector::issue_challenge(std::uint64_t k) {
    if (params_.fixed_lambda) {
        lambda_ = *params_.fixed_lambda;
        if (lambda_.re == 0 || lambda_.im == 0)
            throw ConfigError("challenge factor must have nonzero real and imaginary parts");
    } else {
        if (params_.lambda_bound < 1 || params_.lambda_bound >= params_.pub.ring.p())
            throw ConfigError("lambda_bound must lie in [1, p)");
        lambda_ = {rng_.in_range(1, params_.lambda_bound),
                   rng_.in_range(1, params_.lambda_bound)};
    }

    mpz_class w = params_.schedule.watermark_at(k);
    check_product_range(lambda_, w, params_.data_min + params_.data_offset,
                        params_.data_max + params_.data_offset, params_.pub.ring.p(),
                        params_.lift);

    return elgamal::encrypt(lambda_, params_.pub, rng_, &counters_);
}

Verdict EgDataCollector::verify_response(const elgamal::Ciphertext& combined, std::uint64_t k) {
    GaussianInt mu;
    try {
        mu = elgamal::decrypt(combined, priv_, params_.pub.ring, &counters_);
    } catch (const IntegrityError& e) {
        return Verdict::reject(e.what());
    }
    GaussianInt exact =
        params_.lift == LiftMode::centered ? centered_lift(mu, params_.pub.ring) : mu;

    rdh::Extracted ex;
    try {
        ex = rdh::extract(exact, rdh::WatermarkKey(lambda_));
    } catch (const IntegrityError&) {
        return Verdict::reject("divisibility failure");
    }
    if (ex.watermark != params_.schedule.watermark_at(k))
        return Verdict::reject("watermark mismatch");
    return Verdict::accept(ex.data - params_.data_offset, ex.watermark);
}

EgSensor::EgSensor(EgParams params, SeededRng rng)
    : params_(std::move(params)), rng_(std::move(rng)) {}

elgamal::Ciphertext EgSensor::respond(const elgamal::Ciphertext& challenge,
                                      const mpz_class& data, std::uint64_t k) {
    if (data < params_.data_min || data > params_.data_max)
        throw ConfigError("sensor reading outside the configured data range");

    mpz_class w = params_.schedule.watermark_at(k);
    mpz_class d_sent = data + params_.data_offset;
    GaussianInt delta{d_sent, w};
    if (delta.is_zero())
        throw ConfigError("delta is zero (d = w = 0); configure a nonzero data offset");

    const mpz_class& p = params_.pub.ring.p();
    if (params_.fixed_lambda) {
        // pre-agreed lambda: the sensor can check the exact product
        check_product_range(*params_.fixed_lambda, w, d_sent, d_sent, p, params_.lift);
    } else {
        // only the component cap is known here; bound the worst case
        mpz_class cap = params_.lambda_component_cap();
        mpz_class reach = cap * (abs(d_sent) + w);
        if (params_.lift == LiftMode::centered) {
            if (2 * reach >= p)
                throw ConfigError("data/watermark magnitude breaks the wrap-around bound");
        } else {
            if (d_sent < 0 || reach >= p)
                throw ConfigError("data out of the canonical box for the configured lambda cap");
        }
    }

    elgamal::Ciphertext own = elgamal::encrypt(delta, params_.pub, rng_, &counters_);
    return elgamal::ct_mul(challenge, own, params_.pub.ring);
}

RoundTranscript eg_round(EgDataCollector& dc, EgSensor& sensor, const mpz_class& data,
                         std::uint64_t k, const EgRoundHooks& hooks) {
    dc.counters().reset();
    sensor.counters().reset();

    RoundTranscript t;
    t.round = k;

    elgamal::Ciphertext challenge = dc.issue_challenge(k);
    if (hooks.on_challenge) challenge = hooks.on_challenge(challenge);
    t.messages.push_back(
        {k, "dc", "s1", "eg_challenge", elgamal::ciphertext_to_json(challenge)});

    elgamal::Ciphertext response = sensor.respond(challenge, data, k);
    if (hooks.on_response) response = hooks.on_response(response);
    t.messages.push_back(
        {k, "s1", "dc", "eg_response", elgamal::ciphertext_to_json(response)});

    t.verdict = dc.verify_response(response, k);

    t.counters.complex_modexp_sensor = sensor.counters().complex_modexp;
    t.counters.int_modexp_sensor = sensor.counters().int_modexp;
    t.counters.complex_modexp_dc = dc.counters().complex_modexp;
    t.counters.int_modexp_dc = dc.counters().int_modexp;
    t.counters.messages_total = t.messages.size();
    return t;
}

// ---------------------------------------------------------------------

std::vector<mpz_class> chunk_encrypt_bytes(const Bytes& bytes, const paillier::PublicKey& pub,
                                           SeededRng& rng) {
    std::size_t chunk_bits = mpz_sizeinbase(pub.n.get_mpz_t(), 2) - 1;
    if (chunk_bits == 0)
        throw ConfigError("paillier modulus too small for key transport");

    mpz_class value;
    mpz_import(value.get_mpz_t(), bytes.size(), 1, 1, 0, 0, bytes.data());

    std::size_t total_bits = bytes.size() * 8;
    std::size_t nchunks = (total_bits + chunk_bits - 1) / chunk_bits;
    if (nchunks == 0) nchunks = 1;

    mpz_class mask = (mpz_class(1) << chunk_bits) - 1;
    std::vector<mpz_class> out;
    out.reserve(nchunks);
    for (std::size_t i = 0; i < nchunks; ++i) {
        mpz_class chunk = (value >> (i * chunk_bits)) & mask;
        out.push_back(paillier::enc_int(chunk, pub, rng));
    }
    return out;
}

Bytes chunk_decrypt_bytes(const std::vector<mpz_class>& chunks, std::size_t byte_count,
                          const paillier::PrivateKey& priv, const paillier::PublicKey& pub) {
    std::size_t chunk_bits = mpz_sizeinbase(pub.n.get_mpz_t(), 2) - 1;
    mpz_class mask = (mpz_class(1) << chunk_bits) - 1;
    mpz_class value = 0;
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        // Corrupted transport is not detectable here (Paillier has no
        // integrity); a wrong key surfaces as an authentication failure
        // at challenge distribution.
        mpz_class chunk = paillier::dec_int(chunks[i], priv, pub) & mask;
        value |= chunk << (i * chunk_bits);
    }
    Bytes out(byte_count, 0);
    mpz_class cur = value;
    for (std::size_t i = byte_count; i-- > 0;) {
        out[i] = static_cast<std::uint8_t>(mpz_class(cur & 0xff).get_ui());
        cur >>= 8;
    }
    return out;
}

AggpSensor::AggpSensor(unsigned index, AggpParams params, SeededRng rng)
    : params_(std::move(params)), index_(index), rng_(std::move(rng)) {
    if (index_ == 0)
        throw std::invalid_argument("AggpSensor: indices are 1-based");
}

std::vector<mpz_class> AggpSensor::wrap_sym_key() {
    sym_key_ = rng_.bytes(params_.cipher->key_size());
    return chunk_encrypt_bytes(sym_key_, params_.pub, rng_);
}

paillier::GaussCiphertext AggpSensor::respond(const Bytes& boxed_challenge,
                                              const mpz_class& data, std::uint64_t k) {
    auto opened = params_.cipher->open(sym_key_, round_nonce(k), boxed_challenge);
    if (!opened)
        throw IntegrityError("symmetric authentication failure at " + party_name(index_));
    GaussianInt lambda;
    try {
        lambda = gaussian_from_json(njson::parse(opened->begin(), opened->end()));
    } catch (const std::exception&) {
        throw IntegrityError("undecodable challenge payload at " + party_name(index_));
    }
    if (lambda.re == 0 || lambda.im == 0)
        throw ConfigError("challenge factor must have nonzero real and imaginary parts");

    if (data < params_.data_min || data > params_.data_max)
        throw ConfigError("sensor reading outside the configured data range");

    mpz_class w = params_.schedule.watermark_at(k);
    GaussianInt scaled = lambda * GaussianInt{data, w};

    // Keep the aggregate of N such values inside (-n/2, n/2).
    mpz_class worst = abs(scaled.re) > abs(scaled.im) ? abs(scaled.re) : abs(scaled.im);
    if (2 * params_.sensor_count * worst >= params_.pub.n)
        throw ConfigError("scaled value too large for the Paillier plaintext modulus");

    return paillier::enc_gauss(scaled, params_.pub, rng_, &counters_);
}

AggpDataCollector::AggpDataCollector(AggpParams params, paillier::PrivateKey priv,
                                     SeededRng rng)
    : params_(std::move(params)), priv_(std::move(priv)), rng_(std::move(rng)),
      sym_keys_(params_.sensor_count) {}

void AggpDataCollector::learn_sym_key(unsigned index, const std::vector<mpz_class>& chunks) {
    if (index < 1 || index > sym_keys_.size())
        throw std::out_of_range("learn_sym_key: sensor index");
    sym_keys_[index - 1] =
        chunk_decrypt_bytes(chunks, params_.cipher->key_size(), priv_, params_.pub);
}

void AggpDataCollector::begin_round(std::uint64_t k) {
    if (params_.fixed_lambda) {
        lambda_ = *params_.fixed_lambda;
        if (lambda_.re == 0 || lambda_.im == 0)
            throw ConfigError("challenge factor must have nonzero real and imaginary parts");
    } else {
        if (params_.lambda_bound < 1)
            throw ConfigError("lambda_bound must be positive");
        lambda_ = {rng_.in_range(1, params_.lambda_bound),
                   rng_.in_range(1, params_.lambda_bound)};
    }

    // N scaled values will be summed; every component of the aggregate
    // must stay below n/2 in magnitude.
    mpz_class w = params_.schedule.watermark_at(k);
    for (const mpz_class* d : {&params_.data_min, &params_.data_max}) {
        GaussianInt prod = lambda_ * GaussianInt{*d, w};
        mpz_class worst = abs(prod.re) > abs(prod.im) ? abs(prod.re) : abs(prod.im);
        if (2 * params_.sensor_count * worst >= params_.pub.n)
            throw ConfigError("challenge factor breaks the aggregation bound for the "
                              "configured data range");
    }
}

Bytes AggpDataCollector::issue_challenge(unsigned index, std::uint64_t k) const {
    if (index < 1 || index > sym_keys_.size())
        throw std::out_of_range("issue_challenge: sensor index");
    std::string payload = gaussian_to_json(lambda_).dump();
    Bytes plain(payload.begin(), payload.end());
    return params_.cipher->seal(sym_keys_[index - 1], round_nonce(k), plain);
}

Verdict AggpDataCollector::verify_aggregate(const paillier::GaussCiphertext& final_ct,
                                            std::uint64_t k) {
    GaussianInt sigma;
    try {
        sigma = paillier::dec_gauss(final_ct, priv_, params_.pub, &counters_);
    } catch (const IntegrityError& e) {
        return Verdict::reject(e.what());
    }

    rdh::AggExtracted agg;
    try {
        agg = rdh::extract_aggregate(sigma, rdh::WatermarkKey(lambda_),
                                     mpz_class(params_.sensor_count));
    } catch (const IntegrityError&) {
        return Verdict::reject("divisibility failure");
    }
    if (agg.watermark != params_.schedule.watermark_at(k))
        return Verdict::reject("watermark mismatch");
    return Verdict::accept(agg.sum, agg.watermark);
}

TreeAggregate tree_aggregate(const std::vector<paillier::GaussCiphertext>& leaves,
                             const paillier::PublicKey& pub, const TreeOptions& opts) {
    if (leaves.empty())
        throw std::invalid_argument("tree_aggregate: no ciphertexts");

    struct Slot {
        paillier::GaussCiphertext ct;
        bool live;
        unsigned owner; // 1-based sensor index; 0 for padding
    };

    std::vector<Slot> slots;
    slots.reserve(leaves.size());
    for (std::size_t i = 0; i < leaves.size(); ++i)
        slots.push_back({leaves[i], true, static_cast<unsigned>(i + 1)});

    if (opts.padded) {
        std::size_t target = 1;
        while (target < slots.size()) target *= 2;
        if (target != slots.size() && !opts.padding_rng)
            throw std::invalid_argument("tree_aggregate: padding requires an RNG");
        while (slots.size() < target) {
            // fresh encryption of 0+0i, generated locally by the node that
            // will fold it in; it never travels as a message
            paillier::GaussCiphertext pad =
                paillier::enc_gauss(GaussianInt{0, 0}, pub, *opts.padding_rng,
                                    opts.padding_counters);
            slots.push_back({pad, false, 0});
        }
    }

    unsigned levels = 0;
    std::uint64_t messages = 0;
    while (slots.size() > 1) {
        std::vector<Slot> next;
        next.reserve((slots.size() + 1) / 2);
        for (std::size_t i = 0; i < slots.size(); i += 2) {
            if (i + 1 == slots.size()) { // unbalanced odd tail passes through
                next.push_back(slots[i]);
                continue;
            }
            const Slot& a = slots[i];
            const Slot& b = slots[i + 1];
            Slot combined{paillier::hom_add_gauss(a.ct, b.ct, pub), a.live || b.live, 0};
            if (a.live && b.live) {
                ++messages;
                if (opts.on_message) opts.on_message(a.owner, b.owner, a.ct);
                combined.owner = b.owner;
            } else if (a.live) {
                combined.owner = a.owner;
            } else if (b.live) {
                combined.owner = b.owner;
            }
            next.push_back(std::move(combined));
        }
        slots = std::move(next);
        ++levels;
    }
    assert(messages == leaves.size() - 1);
    return {slots.front().ct, levels, messages};
}

void aggp_setup(AggpDataCollector& dc, std::vector<AggpSensor>& sensors,
                const AggpSetupHooks& hooks) {
    for (auto& s : sensors) {
        std::vector<mpz_class> chunks = s.wrap_sym_key();
        if (hooks.on_key_transport) chunks = hooks.on_key_transport(s.index(), chunks);
        try {
            dc.learn_sym_key(s.index(), chunks);
        } catch (const IntegrityError& e) {
            throw ConfigError(std::string("aggp setup abort: ") + e.what());
        }
    }
}

RoundTranscript aggp_round(AggpDataCollector& dc, std::vector<AggpSensor>& sensors,
                           const std::vector<mpz_class>& data, std::uint64_t k,
                           const AggpRoundHooks& hooks) {
    const unsigned n_sensors = static_cast<unsigned>(sensors.size());
    if (n_sensors == 0)
        throw ConfigError("aggp_round: at least one sensor required");
    if (data.size() != sensors.size())
        throw ConfigError("aggp_round: one reading per sensor required");
    if (n_sensors != dc.params().sensor_count)
        throw ConfigError("aggp_round: sensor count does not match the configuration");

    dc.counters().reset();
    for (auto& s : sensors) s.counters().reset();
    OpCounters padding_ctr;

    RoundTranscript t;
    t.round = k;

    auto finish = [&](Verdict v) {
        t.verdict = std::move(v);
        std::uint64_t per_sensor = sensors.front().counters().modexp_n2;
        for (auto& s : sensors)
            if (s.counters().modexp_n2 != per_sensor) per_sensor = 0; // non-uniform: report 0
        t.counters.modexp_n2_sensor = per_sensor;
        t.counters.modexp_n2_dc = dc.counters().modexp_n2;
        t.counters.modexp_n2_padding = padding_ctr.modexp_n2;
        t.counters.messages_total = t.messages.size();
        return t;
    };

    dc.begin_round(k);

    std::vector<Bytes> delivered(n_sensors);
    for (unsigned j = 1; j <= n_sensors; ++j) {
        Bytes boxed = dc.issue_challenge(j, k);
        if (hooks.on_challenge) boxed = hooks.on_challenge(j, boxed);
        delivered[j - 1] = boxed;
        t.messages.push_back({k, "dc", party_name(j), "aggp_challenge",
                              njson{{"nonce", to_hex(round_nonce(k))}, {"box", to_hex(boxed)}}});
    }

    std::vector<paillier::GaussCiphertext> leaves;
    leaves.reserve(n_sensors);
    for (unsigned j = 1; j <= n_sensors; ++j) {
        try {
            leaves.push_back(sensors[j - 1].respond(delivered[j - 1], data[j - 1], k));
        } catch (const IntegrityError& e) {
            return finish(Verdict::reject(e.what()));
        }
    }

    // Padding randomness branches off the root aggregator's stream, only
    // when the tree actually needs pads.
    bool needs_padding =
        dc.params().padded_tree && (n_sensors & (n_sensors - 1)) != 0;
    std::optional<SeededRng> padding_rng;
    if (needs_padding)
        padding_rng.emplace(derive_subseed(sensors.back().rng().u64(), "padding"));
    TreeOptions topts;
    topts.padded = dc.params().padded_tree;
    topts.padding_rng = padding_rng ? &*padding_rng : nullptr;
    topts.padding_counters = &padding_ctr;
    topts.on_message = [&](unsigned from, unsigned to, const paillier::GaussCiphertext& ct) {
        t.messages.push_back({k, party_name(from), party_name(to), "aggp_partial",
                              paillier::gauss_ciphertext_to_json(ct)});
    };
    TreeAggregate agg = tree_aggregate(leaves, dc.params().pub, topts);

    paillier::GaussCiphertext final_ct = agg.total;
    if (hooks.on_final) final_ct = hooks.on_final(final_ct);
    // root of the aggregation path reports to the DC
    unsigned root = n_sensors;
    t.messages.push_back({k, party_name(root), "dc", "aggp_aggregate",
                          paillier::gauss_ciphertext_to_json(final_ct)});

    return finish(dc.verify_aggregate(final_ct, k));
}

std::string party_name(unsigned sensor_index) {
    return sensor_index == 0 ? "dc" : "s" + std::to_string(sensor_index);
}

} // namespace hidden::proto
