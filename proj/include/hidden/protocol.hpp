#pragma once

#include "hidden/aead.hpp"
#include "hidden/counters.hpp"
#include "hidden/elgamal.hpp"
#include "hidden/gaussian.hpp"
#include "hidden/paillier.hpp"
#include "hidden/rng.hpp"
#include "hidden/schedule.hpp"
#include "hidden/transcript.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace hidden::proto {

// ---------------------------------------------------------------------
// Joint watermarking + encryption for individual data (Gaussian ElGamal)
// ---------------------------------------------------------------------

// How the DC recovers the exact product lambda*delta from its residue
// mod p. The centered box handles signed components; the canonical box
// [0,p) x [0,p) matches settings where every component stays nonnegative.
enum class LiftMode { centered, canonical };

struct EgParams {
    elgamal::PublicKey pub;
    WatermarkSchedule schedule;

    // Challenge factor policy: a fixed pre-agreed lambda, or a fresh one
    // per round with components in [1, lambda_bound].
    std::optional<GaussianInt> fixed_lambda;
    mpz_class lambda_bound = 1;

    // Configured raw data range; the offset keeps delta away from zero
    // and is removed again after extraction.
    mpz_class data_min;
    mpz_class data_max;
    mpz_class data_offset;

    LiftMode lift = LiftMode::centered;

    // Largest |component| the challenge factor may take under this
    // configuration. Used for the sensor-side wrap-around check.
    mpz_class lambda_component_cap() const;
};

class EgDataCollector {
public:
    EgDataCollector(EgParams params, elgamal::PrivateKey priv, SeededRng rng);

    // Data-exchange step 1: pick lambda_k, check the wrap-around bound
    // against the configured data range, encrypt lambda_k under the DC's
    // own public key. Throws ConfigError when the bound fails.
    elgamal::Ciphertext issue_challenge(std::uint64_t k);

    // Data-exchange step 3: decrypt the combined ciphertext, lift to the
    // exact product, divide by lambda_k and verify the watermark.
    Verdict verify_response(const elgamal::Ciphertext& combined, std::uint64_t k);

    const GaussianInt& current_lambda() const { return lambda_; }
    OpCounters& counters() { return counters_; }
    const EgParams& params() const { return params_; }

private:
    EgParams params_;
    elgamal::PrivateKey priv_;
    SeededRng rng_;
    OpCounters counters_;
    GaussianInt lambda_{1, 1};
};

class EgSensor {
public:
    EgSensor(EgParams params, SeededRng rng);

    // Data-exchange step 2: embed the watermark into the plaintext,
    // encrypt, and homomorphically multiply with the received challenge.
    elgamal::Ciphertext respond(const elgamal::Ciphertext& challenge, const mpz_class& data,
                                std::uint64_t k);

    OpCounters& counters() { return counters_; }

private:
    EgParams params_;
    SeededRng rng_;
    OpCounters counters_;
};

// Adversary taps: each receives the in-flight payload and returns what is
// delivered. Absent hooks deliver faithfully.
struct EgRoundHooks {
    std::function<elgamal::Ciphertext(const elgamal::Ciphertext&)> on_challenge;
    std::function<elgamal::Ciphertext(const elgamal::Ciphertext&)> on_response;
};

// One full data-exchange round between the DC and a single sensor.
// Counters are reset at round entry; per the protocol accounting an
// honest round costs the sensor 2 complex modexps and the DC 3 complex
// plus 1 integer modexp.
RoundTranscript eg_round(EgDataCollector& dc, EgSensor& sensor, const mpz_class& data,
                         std::uint64_t k, const EgRoundHooks& hooks = {});

// ---------------------------------------------------------------------
// Joint watermarking + encryption + aggregation (component-wise Paillier)
// ---------------------------------------------------------------------

struct AggpParams {
    paillier::PublicKey pub;
    WatermarkSchedule schedule;

    std::optional<GaussianInt> fixed_lambda;
    mpz_class lambda_bound = 1;

    mpz_class data_min;
    mpz_class data_max;

    unsigned sensor_count = 1;
    bool padded_tree = true; // false: unbalanced tree, no padding
    const AeadCipher* cipher = &default_cipher();
};

class AggpSensor {
public:
    AggpSensor(unsigned index, AggpParams params, SeededRng rng);

    // Init step 2: generate the symmetric key and Paillier-encrypt it
    // (chunked below the plaintext modulus when needed).
    std::vector<mpz_class> wrap_sym_key();

    // Data-exchange step 2: decrypt the challenge, embed, scale, encrypt
    // component-wise. Throws IntegrityError on authentication failure.
    paillier::GaussCiphertext respond(const Bytes& boxed_challenge, const mpz_class& data,
                                      std::uint64_t k);

    unsigned index() const { return index_; }
    OpCounters& counters() { return counters_; }
    SeededRng& rng() { return rng_; }

private:
    AggpParams params_;
    unsigned index_;
    Bytes sym_key_;
    SeededRng rng_;
    OpCounters counters_;
};

class AggpDataCollector {
public:
    AggpDataCollector(AggpParams params, paillier::PrivateKey priv, SeededRng rng);

    // Init: recover sensor j's symmetric key from its Paillier chunks.
    void learn_sym_key(unsigned index, const std::vector<mpz_class>& chunks);

    // Data-exchange step 1: pick lambda_k once per round and box it for
    // each sensor under that sensor's symmetric key.
    void begin_round(std::uint64_t k);
    Bytes issue_challenge(unsigned index, std::uint64_t k) const;

    // Data-exchange step 4: decrypt both components, extract the sum and
    // the watermark, verify.
    Verdict verify_aggregate(const paillier::GaussCiphertext& final_ct, std::uint64_t k);

    const GaussianInt& current_lambda() const { return lambda_; }
    OpCounters& counters() { return counters_; }
    const AggpParams& params() const { return params_; }

private:
    AggpParams params_;
    paillier::PrivateKey priv_;
    SeededRng rng_;
    OpCounters counters_;
    GaussianInt lambda_{1, 1};
    std::vector<Bytes> sym_keys_; // indexed by sensor - 1
};

// Paillier-encrypt a fresh symmetric key chunk-wise (all chunks below
// 2^(bits(n)-1) <= n) and the inverse used by the DC.
std::vector<mpz_class> chunk_encrypt_bytes(const Bytes& bytes, const paillier::PublicKey& pub,
                                           SeededRng& rng);
Bytes chunk_decrypt_bytes(const std::vector<mpz_class>& chunks, std::size_t byte_count,
                          const paillier::PrivateKey& priv, const paillier::PublicKey& pub);

struct TreeOptions {
    bool padded = true;
    // Required in padded mode when the leaf count is not a power of two;
    // supplies randomness for the fresh encryptions of 0+0i.
    SeededRng* padding_rng = nullptr;
    OpCounters* padding_counters = nullptr;
    // Called once per ciphertext handed from one live node to another;
    // owners are 1-based sensor indices.
    std::function<void(unsigned from, unsigned to, const paillier::GaussCiphertext&)> on_message;
};

struct TreeAggregate {
    paillier::GaussCiphertext total;
    unsigned levels;
    std::uint64_t message_count; // always leaf_count - 1
};

// Cascading homomorphic summation over a binary tree: ceil(log2 N)
// levels, N-1 ciphertext handoffs. Padding slots (fresh encryptions of
// 0+0i) are combined locally by the live node that consumes them and
// never travel.
TreeAggregate tree_aggregate(const std::vector<paillier::GaussCiphertext>& leaves,
                             const paillier::PublicKey& pub, const TreeOptions& opts = {});

struct AggpSetupHooks {
    // May corrupt the key-transport ciphertext chunks of a sensor.
    std::function<std::vector<mpz_class>(unsigned index, const std::vector<mpz_class>&)>
        on_key_transport;
};

// Init phase: every sensor wraps its symmetric key under the DC's
// Paillier public key; the DC unwraps them. Throws ConfigError when a
// transported key cannot be decrypted at all.
void aggp_setup(AggpDataCollector& dc, std::vector<AggpSensor>& sensors,
                const AggpSetupHooks& hooks = {});

struct AggpRoundHooks {
    std::function<Bytes(unsigned index, const Bytes&)> on_challenge;
    std::function<paillier::GaussCiphertext(const paillier::GaussCiphertext&)> on_final;
};

// One aggregation round: N challenge messages, N-1 in-tree handoffs, one
// final message to the DC (2N messages total). Honest cost: 4 modexps
// mod n^2 per sensor, 2 at the DC.
RoundTranscript aggp_round(AggpDataCollector& dc, std::vector<AggpSensor>& sensors,
                           const std::vector<mpz_class>& data, std::uint64_t k,
                           const AggpRoundHooks& hooks = {});

std::string party_name(unsigned sensor_index); // "s<j>"; 0 means "dc"

} // namespace hidden::proto
