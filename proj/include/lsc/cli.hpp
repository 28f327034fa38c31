#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lsc/coding.hpp"
#include "lsc/codes.hpp"
#include "lsc/container.hpp"
#include "lsc/errors.hpp"
#include "lsc/gf.hpp"
#include "lsc/scheme.hpp"
#include "lsc/secrecy.hpp"
#include "lsc/source.hpp"

namespace lsc {
namespace cli_detail {

inline std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bytes;
}

inline void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write failed on " + path);
}

inline Container read_container(const std::string& path, bool expect_seed_envelope = false) {
    const auto bytes = read_file(path);
    return parse(bytes, expect_seed_envelope);
}

inline void write_container(const std::string& path, const Container& c) { write_file(path, serialize(c)); }

// Raw symbol files: one byte per symbol for q <= 256, two bytes LE above.
inline std::vector<Fe> read_raw_symbols(const std::string& path, const Field& field) {
    const auto bytes = read_file(path);
    const std::size_t width = field.order() > 256 ? 2 : 1;
    if (bytes.size() % width != 0) throw FormatError(bytes.size(), "odd byte count for two-byte symbols");
    std::vector<Fe> symbols;
    symbols.reserve(bytes.size() / width);
    for (std::size_t off = 0; off < bytes.size(); off += width) {
        std::uint32_t v = bytes[off];
        if (width == 2) v |= std::uint32_t(bytes[off + 1]) << 8;
        if (v >= field.order()) throw FormatError(off, "symbol value out of range for field");
        symbols.push_back(static_cast<Fe>(v));
    }
    return symbols;
}

inline void write_raw_symbols(const std::string& path, const Field& field, std::span<const Fe> symbols) {
    std::vector<std::uint8_t> bytes;
    const bool wide = field.order() > 256;
    bytes.reserve(symbols.size() * (wide ? 2 : 1));
    for (Fe s : symbols) {
        bytes.push_back(static_cast<std::uint8_t>(s & 0xFF));
        if (wide) bytes.push_back(static_cast<std::uint8_t>(s >> 8));
    }
    write_file(path, bytes);
}

inline std::vector<Fe> parse_symbol_list(const std::string& text, const Field& field) {
    std::vector<Fe> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &pos, 0);
        } catch (const std::exception&) {
            throw Error("cannot parse symbol value '" + item + "'");
        }
        if (pos != item.size()) throw Error("cannot parse symbol value '" + item + "'");
        if (v >= field.order()) throw Error("symbol value " + item + " out of range for field");
        out.push_back(static_cast<Fe>(v));
    }
    return out;
}

inline Field field_from_flags(std::uint32_t q, std::optional<std::uint32_t> poly) {
    if (poly && q != 256) throw CLI::ValidationError("--poly", "--poly is only meaningful with --q 256");
    if (q == 256) return Field::binary8(poly.value_or(0x11B));
    return Field::prime(q);
}

// One probability per line, q lines; must sum to 1 within 1e-9, then gets
// normalized exactly before the model's stricter check.
inline SourceModel source_from_pmf_file(const std::string& path, const Field& field) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::vector<double> pmf;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            pmf.push_back(std::stod(line));
        } catch (const std::exception&) {
            throw FormatError(lineno, "cannot parse probability on line " + std::to_string(lineno));
        }
    }
    if (pmf.size() != field.order())
        throw FormatError(lineno, "pmf file must have exactly q = " + std::to_string(field.order()) + " entries");
    double sum = 0.0;
    for (double p : pmf) {
        if (p < 0.0) throw FormatError(lineno, "probabilities must be nonnegative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw FormatError(lineno, "pmf must sum to 1 within 1e-9");
    for (double& p : pmf) p /= sum;
    return SourceModel(field, std::move(pmf));
}

inline CodeSpec load_code(const std::string& path) { return code_from_container(read_container(path)); }

inline void check_payload_matches(const Container& payload, const CodeSpec& code, const std::string& what) {
    if (payload.field_kind != code.field().kind() || payload.field_param != code.field().param() ||
        payload.n != code.n() || payload.k != code.k())
        throw DimensionMismatch(what + " does not match the code parameters");
}

}  // namespace cli_detail

// Front end for all subcommands. Exit codes: 0 success, 1 usage error,
// 2 data/format error, 3 capacity exceeded.
inline int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    namespace cd = cli_detail;
    debug_reset_otp_registry();

    CLI::App app{"List-source coding, two-phase encryption, and symbol-secrecy analysis over finite fields"};
    app.require_subcommand(1);

    // mk-code
    auto* mk = app.add_subcommand("mk-code", "Construct a Vandermonde parity check H and its complement D");
    std::uint32_t mk_q = 0, mk_n = 0, mk_k = 0;
    std::optional<std::uint32_t> mk_poly;
    std::string mk_points;
    std::string mk_out_h = "H.lsc", mk_out_d = "D.lsc";
    mk->add_option("--q", mk_q, "Field order (prime, or 256 for GF(2^8))")->required();
    mk->add_option("--n", mk_n, "Block length")->required();
    mk->add_option("--k", mk_k, "List exponent (coset dimension)")->required();
    mk->add_option("--poly", mk_poly, "Reduction polynomial for GF(2^8), e.g. 0x11B");
    mk->add_option("--points", mk_points, "Comma-separated evaluation points (default 0..n-1)");
    mk->add_option("--out-h", mk_out_h, "Output path for H");
    mk->add_option("--out-d", mk_out_d, "Output path for D");

    // encode
    auto* enc = app.add_subcommand("encode", "Syndrome-encode a raw symbol file");
    std::string enc_code, enc_in, enc_out;
    enc->add_option("--code", enc_code, "Parity check container")->required();
    enc->add_option("--in", enc_in, "Raw plaintext symbols (length n)")->required();
    enc->add_option("--out", enc_out, "Output syndrome container")->required();

    // decode-list
    auto* dec = app.add_subcommand("decode-list", "Enumerate the coset named by a syndrome");
    std::string dec_code, dec_syndrome, dec_out;
    std::uint64_t dec_limit = 0;
    dec->add_option("--code", dec_code, "Parity check container")->required();
    dec->add_option("--syndrome", dec_syndrome, "Syndrome container")->required();
    dec->add_option("--limit", dec_limit, "Emit at most this many members (default: whole list)");
    dec->add_option("--out", dec_out, "Write members as a plaintext container instead of text");

    // encrypt
    auto* ecr = app.add_subcommand("encrypt", "Two-phase encrypt a raw symbol file");
    std::string ecr_code, ecr_d, ecr_cipher, ecr_key, ecr_in, ecr_p1, ecr_p2;
    std::optional<std::uint64_t> ecr_seed;
    ecr->add_option("--code", ecr_code, "Parity check container")->required();
    ecr->add_option("--d", ecr_d, "Complement matrix container (default: derived from H)");
    ecr->add_option("--cipher", ecr_cipher, "otp or prg")->required()->check(CLI::IsMember({"otp", "prg"}));
    ecr->add_option("--key", ecr_key, "Comma-separated one-time pad key (k symbols)");
    ecr->add_option("--seed", ecr_seed, "prg-stream seed");
    ecr->add_option("--in", ecr_in, "Raw plaintext symbols (length n)")->required();
    ecr->add_option("--out-phase1", ecr_p1, "Output phase-1 container")->required();
    ecr->add_option("--out-phase2", ecr_p2, "Output phase-2 container")->required();

    // decrypt
    auto* dcr = app.add_subcommand("decrypt", "Recover plaintext from the two phases");
    std::string dcr_code, dcr_d, dcr_cipher, dcr_key, dcr_p1, dcr_p2, dcr_out;
    dcr->add_option("--code", dcr_code, "Parity check container")->required();
    dcr->add_option("--d", dcr_d, "Complement matrix container (default: derived from H)");
    dcr->add_option("--cipher", dcr_cipher, "otp or prg")->required()->check(CLI::IsMember({"otp", "prg"}));
    dcr->add_option("--key", dcr_key, "Comma-separated one-time pad key (k symbols)");
    dcr->add_option("--in-phase1", dcr_p1, "Phase-1 container")->required();
    dcr->add_option("--in-phase2", dcr_p2, "Phase-2 container")->required();
    dcr->add_option("--out", dcr_out, "Output raw plaintext path")->required();

    // analyze
    auto* ana = app.add_subcommand("analyze", "Exhaustive symbol-secrecy report for a code and source");
    std::string ana_code, ana_source = "uniform", ana_points, ana_out;
    std::uint32_t ana_q = 0, ana_n = 0, ana_k = 0;
    std::optional<std::uint32_t> ana_poly;
    double ana_eps = 0.0;
    ana->add_option("--code", ana_code, "Parity check container");
    ana->add_option("--q", ana_q, "Field order (with --n/--k: analyze the Vandermonde code)");
    ana->add_option("--n", ana_n, "Block length");
    ana->add_option("--k", ana_k, "List exponent");
    ana->add_option("--poly", ana_poly, "Reduction polynomial for GF(2^8)");
    ana->add_option("--points", ana_points, "Comma-separated evaluation points");
    ana->add_option("--source", ana_source, "uniform, or path to a pmf file (one probability per line)");
    ana->add_option("--epsilon", ana_eps, "Per-symbol leak budget in bits");
    ana->add_option("--out", ana_out, "Write the report to a file instead of stdout");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*mk) {
            const Field field = cd::field_from_flags(mk_q, mk_poly);
            std::optional<std::vector<Fe>> points;
            if (!mk_points.empty()) points = cd::parse_symbol_list(mk_points, field);
            const CodeSpec code = vandermonde_parity_check(field, mk_n, mk_k, points);
            const MatrixGF d = derive_complement(code);
            cd::write_container(mk_out_h, make_matrix_container(field, mk_n, mk_k, code.h()));
            cd::write_container(mk_out_d, make_matrix_container(field, mk_n, mk_k, d));
            out << "wrote " << mk_out_h << " (" << (mk_n - mk_k) << "x" << mk_n << ") and " << mk_out_d << " ("
                << mk_k << "x" << mk_n << ")\n";
        } else if (*enc) {
            const CodeSpec code = cd::load_code(enc_code);
            const std::vector<Fe> x = cd::read_raw_symbols(enc_in, code.field());
            const Syndrome s = lsc_encode(code, x);
            cd::write_container(enc_out, make_payload_container(code, PayloadKind::Syndrome, s.symbols));
            out << "wrote " << enc_out << " (" << s.symbols.size() << " syndrome symbols)\n";
        } else if (*dec) {
            const CodeSpec code = cd::load_code(dec_code);
            const Container sc = cd::read_container(dec_syndrome);
            if (sc.payload_kind != PayloadKind::Syndrome && sc.payload_kind != PayloadKind::Phase1)
                throw FormatError(18, "expected a syndrome or phase1 payload");
            cd::check_payload_matches(sc, code, "syndrome container");
            CosetList list(code, Syndrome{sc.symbols});
            const std::uint64_t limit = dec_limit == 0 ? list.cardinality() : dec_limit;
            std::vector<Fe> flat;
            std::uint64_t emitted = 0;
            for (; emitted < limit; ++emitted) {
                auto member = list.next();
                if (!member) break;
                if (!dec_out.empty())
                    flat.insert(flat.end(), member->begin(), member->end());
                else {
                    for (std::size_t i = 0; i < member->size(); ++i) out << (i ? "," : "") << (*member)[i];
                    out << "\n";
                }
            }
            if (!dec_out.empty()) {
                cd::write_container(dec_out, make_payload_container(code, PayloadKind::Plaintext, std::move(flat)));
                out << "wrote " << dec_out << " (" << emitted << " coset members)\n";
            }
        } else if (*ecr || *dcr) {
            const bool encrypting = static_cast<bool>(*ecr);
            const CodeSpec code = cd::load_code(encrypting ? ecr_code : dcr_code);
            const std::string d_path = encrypting ? ecr_d : dcr_d;
            const MatrixGF d = d_path.empty() ? derive_complement(code)
                                              : matrix_from_container(cd::read_container(d_path));
            const std::string cipher_name = encrypting ? ecr_cipher : dcr_cipher;
            if (encrypting) {
                InnerCipher cipher = [&] {
                    if (cipher_name == "otp") {
                        if (ecr_key.empty()) throw CLI::RequiredError("--key (required with --cipher otp)");
                        return InnerCipher::one_time_pad(cd::parse_symbol_list(ecr_key, code.field()));
                    }
                    if (!ecr_seed) throw CLI::RequiredError("--seed (required with --cipher prg)");
                    return InnerCipher::prg_stream(*ecr_seed);
                }();
                const std::vector<Fe> x = cd::read_raw_symbols(ecr_in, code.field());
                const TwoPhaseBundle bundle = two_phase_encrypt(x, code, d, cipher);
                cd::write_container(ecr_p1, make_payload_container(code, PayloadKind::Phase1, bundle.phase1));
                cd::write_container(ecr_p2, make_payload_container(code, PayloadKind::Phase2, bundle.phase2,
                                                                   bundle.prg_seed));
                out << "wrote " << ecr_p1 << " and " << ecr_p2 << "\n";
            } else {
                const Container p1 = cd::read_container(dcr_p1);
                const Container p2 = cd::read_container(dcr_p2, cipher_name == "prg");
                if (p1.payload_kind != PayloadKind::Phase1) throw FormatError(18, "expected a phase1 payload");
                if (p2.payload_kind != PayloadKind::Phase2) throw FormatError(18, "expected a phase2 payload");
                cd::check_payload_matches(p1, code, "phase1 container");
                cd::check_payload_matches(p2, code, "phase2 container");
                InnerCipher cipher = [&] {
                    if (cipher_name == "otp") {
                        if (dcr_key.empty()) throw CLI::RequiredError("--key (required with --cipher otp)");
                        return InnerCipher::one_time_pad(cd::parse_symbol_list(dcr_key, code.field()));
                    }
                    if (!p2.seed_envelope) throw FormatError(kContainerHeaderSize, "phase2 payload lacks a seed envelope");
                    return InnerCipher::prg_stream(*p2.seed_envelope);
                }();
                TwoPhaseBundle bundle;
                bundle.phase1 = p1.symbols;
                bundle.phase2 = p2.symbols;
                bundle.cipher_kind = cipher.kind();
                bundle.prg_seed = p2.seed_envelope;
                const std::vector<Fe> x = two_phase_decrypt(bundle, code, d, cipher);
                cd::write_raw_symbols(dcr_out, code.field(), x);
                out << "wrote " << dcr_out << " (" << x.size() << " symbols)\n";
            }
        } else if (*ana) {
            std::optional<CodeSpec> code;
            if (!ana_code.empty()) {
                code = cd::load_code(ana_code);
            } else {
                if (ana->count("--q") == 0 || ana->count("--n") == 0 || ana->count("--k") == 0)
                    throw CLI::RequiredError("--code or (--q, --n, --k)");
                const Field field = cd::field_from_flags(ana_q, ana_poly);
                std::optional<std::vector<Fe>> points;
                if (!ana_points.empty()) points = cd::parse_symbol_list(ana_points, field);
                code = vandermonde_parity_check(field, ana_n, ana_k, points);
            }
            const SourceModel source = ana_source == "uniform"
                                           ? SourceModel::uniform(code->field())
                                           : cd::source_from_pmf_file(ana_source, code->field());
            const std::string code_id = "q" + std::to_string(code->field().order()) + "-n" +
                                        std::to_string(code->n()) + "-k" + std::to_string(code->k());
            const SecrecyReport rep = secrecy_bounds_report(*code, source, ana_eps, 1'000'000, code_id,
                                                            ana_source == "uniform" ? "uniform" : ana_source);
            const std::string text = format_report(rep);
            if (!ana_out.empty()) {
                cd::write_file(ana_out, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
                out << "wrote " << ana_out << "\n";
            } else {
                out << text;
            }
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace lsc
