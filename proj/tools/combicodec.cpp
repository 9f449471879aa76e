// combicodec command-line tool: encode, decode, info, selftest.
//
// Exit codes: 0 success, 1 usage error, 2 data or validation error,
// 3 selftest failure.

#include "combicodec/cli_io.hpp"
#include "combicodec/selftest.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace cc = combicodec;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;
constexpr int kSelftestFailure = 3;

struct ContextFlags {
    std::string model;
    std::string alphabet;
    std::string dist;
    std::string alpha;
    std::string given;
    std::optional<std::uint64_t> k;
    unsigned freq_bits = cc::kDefaultFreqBits;

    void attach(CLI::App& cmd) {
        cmd.add_option("--model", model, "seq, multiset, perm, trunc_perm, comb, uniform_ms, adaptive_seq, adaptive_ms")
            ->required();
        cmd.add_option("--alphabet", alphabet, "alphabet file (token order defines symbol order)")->required();
        cmd.add_option("--dist", dist, "source distribution file (seq, multiset)");
        cmd.add_option("--alpha", alpha, "Dirichlet pseudocount file (adaptive_seq, adaptive_ms)");
        cmd.add_option("--given-multiset", given, "given multiset file (perm, trunc_perm, comb)");
        cmd.add_option("--k", k, "draw size (trunc_perm, comb)");
        cmd.add_option("--freq-bits", freq_bits, "coder frequency resolution in bits")
            ->check(CLI::Range(1u, cc::kMaxFreqBits));
    }

    cc::Model parsed_model() const {
        if (auto m = cc::parse_model(model)) return *m;
        throw cc::ContextError("unknown model '" + model + "'");
    }

    // The object size comes from the input when encoding and from the
    // container when decoding.
    cc::CodingContext build(std::uint64_t object_size) const {
        const cc::Model m = parsed_model();
        cc::CodingContext ctx;
        ctx.model = m;
        ctx.alphabet = cc::parse_alphabet(cc::read_text_file(alphabet));
        ctx.freq_bits = freq_bits;
        auto need = [&](const std::string& value, const char* flag) {
            if (value.empty())
                throw cc::ContextError("model '" + model + "' requires " + flag);
        };
        auto forbid = [&](bool present, const char* flag) {
            if (present) throw cc::ContextError("model '" + model + "' does not take " + flag);
        };
        const bool wants_source = m == cc::Model::sequence || m == cc::Model::multiset;
        const bool wants_prior = m == cc::Model::adaptive_sequence || m == cc::Model::adaptive_multiset;
        const bool wants_given = m == cc::Model::permutation || m == cc::Model::truncated_permutation ||
                                 m == cc::Model::combination;
        const bool wants_k = m == cc::Model::truncated_permutation || m == cc::Model::combination;
        forbid(!wants_source && !dist.empty(), "--dist");
        forbid(!wants_prior && !alpha.empty(), "--alpha");
        forbid(!wants_given && !given.empty(), "--given-multiset");
        forbid(!wants_k && k.has_value(), "--k");

        if (wants_source) {
            need(dist, "--dist");
            ctx.source = cc::parse_distribution(cc::read_text_file(dist), ctx.alphabet);
        }
        if (wants_prior) {
            need(alpha, "--alpha");
            ctx.prior = cc::parse_alpha(cc::read_text_file(alpha), ctx.alphabet);
        }
        if (wants_given) {
            need(given, "--given-multiset");
            ctx.given = cc::Multiset::histogram(cc::parse_tokens(cc::read_text_file(given), ctx.alphabet),
                                                ctx.alphabet.size());
            ctx.size = ctx.given->size();
        } else {
            ctx.size = object_size;
        }
        if (wants_k) {
            if (k && *k != object_size)
                throw cc::DataError("--k " + std::to_string(*k) + " does not match the object size " +
                                    std::to_string(object_size));
            ctx.draw_size = object_size;
        }
        ctx.validate();
        return ctx;
    }
};

std::string format_bits(double ic) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", ic);
    return buf;
}

int run_encode(const ContextFlags& flags, const std::string& input, const std::string& output) {
    const cc::Model model = flags.parsed_model();
    const cc::Alphabet alphabet = cc::parse_alphabet(cc::read_text_file(flags.alphabet));
    const cc::Object object = cc::parse_object(cc::read_text_file(input), model, alphabet);
    const std::uint64_t size = std::holds_alternative<cc::Sequence>(object)
                                   ? std::get<cc::Sequence>(object).size()
                                   : std::get<cc::Multiset>(object).size();
    const cc::CodingContext ctx = flags.build(size);
    const double ic = cc::information_content(ctx, object);
    cc::EncodedBlob blob = cc::encode(ctx, object);
    const std::uint64_t bits = blob.bit_length;
    cc::write_file(output, cc::make_container(ctx, std::move(blob)).serialize());
    std::cout << "bits=" << bits << " ic=" << format_bits(ic) << '\n';
    return 0;
}

int run_decode(const ContextFlags& flags, const std::string& input, const std::string& output) {
    const cc::Container container = cc::Container::parse(cc::read_binary_file(input));
    const cc::Model model = flags.parsed_model();
    if (container.model != model)
        throw cc::ContextMismatch("model id mismatch: container holds '" +
                                  std::string(cc::model_name(container.model)) + "', --model is '" + flags.model +
                                  "'");
    const std::uint64_t size = container.k ? *container.k : container.n;
    const cc::CodingContext ctx = flags.build(size);
    cc::verify_container(container, ctx);
    const cc::Object object = cc::decode(ctx, container.blob);
    cc::write_file(output, cc::format_object(object, ctx.alphabet));
    return 0;
}

int run_info(const ContextFlags& flags, const std::string& input) {
    const cc::Model model = flags.parsed_model();
    const cc::Alphabet alphabet = cc::parse_alphabet(cc::read_text_file(flags.alphabet));
    const cc::Object object = cc::parse_object(cc::read_text_file(input), model, alphabet);
    const std::uint64_t size = std::holds_alternative<cc::Sequence>(object)
                                   ? std::get<cc::Sequence>(object).size()
                                   : std::get<cc::Multiset>(object).size();
    const cc::CodingContext ctx = flags.build(size);
    std::cout << "ic=" << format_bits(cc::information_content(ctx, object)) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arithmetic coding of sequences, multisets, permutations and combinations"};
    app.require_subcommand(1);

    ContextFlags encode_flags, decode_flags, info_flags;
    std::string encode_in, encode_out, decode_in, decode_out, info_in;

    auto* encode = app.add_subcommand("encode", "compress an object into a container");
    encode_flags.attach(*encode);
    encode->add_option("--input", encode_in, "object text file")->required();
    encode->add_option("--output", encode_out, "container file to write")->required();

    auto* decode = app.add_subcommand("decode", "reconstruct an object from a container");
    decode_flags.attach(*decode);
    decode->add_option("--input", decode_in, "container file")->required();
    decode->add_option("--output", decode_out, "object text file to write")->required();

    auto* info = app.add_subcommand("info", "print the information content of an object");
    info_flags.attach(*info);
    info->add_option("--input", info_in, "object text file")->required();

    cc::SelftestOptions selftest_options;
    auto* selftest = app.add_subcommand("selftest", "run exact-oracle checks and randomized round trips");
    selftest->add_option("--max-n", selftest_options.budget.max_n, "largest N enumerated by the oracle");
    selftest->add_option("--max-alphabet", selftest_options.budget.max_alphabet,
                         "largest alphabet enumerated by the oracle");
    selftest->add_option("--trials", selftest_options.random_trials, "random round trips per model");
    selftest->add_option("--seed", selftest_options.seed, "seed for the random round trips");
    selftest->add_flag("--inject-fault", selftest_options.inject_fault, "corrupt every payload (tests the harness)")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsageError;
    }

    try {
        if (*encode) return run_encode(encode_flags, encode_in, encode_out);
        if (*decode) return run_decode(decode_flags, decode_in, decode_out);
        if (*info) return run_info(info_flags, info_in);
        if (*selftest) return cc::run_selftest(selftest_options, std::cout).passed() ? 0 : kSelftestFailure;
    } catch (const cc::ContextError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kUsageError;
}
