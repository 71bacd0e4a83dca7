// Command-line front end for the authenticated skip-list log: manage a log
// file, emit and check proofs as wire-format files, and run the census and
// hop-law scans.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aaosl/aaosl.hpp"

using namespace aaosl;

namespace {

ByteBuf parse_datum(const std::string& text, bool hex) {
  if (!hex)
    return ByteBuf(text.begin(), text.end());
  if (text.size() % 2 != 0)
    throw Error(Errc::invalid_range, "hex datum needs an even digit count");
  ByteBuf out;
  out.reserve(text.size() / 2);
  for (std::size_t i = 0; i < text.size(); i += 2) {
    int hi = hex_nibble(text[i]);
    int lo = hex_nibble(text[i + 1]);
    if (hi < 0 || lo < 0)
      throw Error(Errc::invalid_range, "non-hex character in datum");
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

TrustAnchor parse_anchor(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw Error(Errc::invalid_range,
                "anchor must be index:hexdigest, got \"" + text + "\"");
  TrustAnchor anchor;
  anchor.index = std::stoull(text.substr(0, colon));
  anchor.digest = digest_from_hex(text.substr(colon + 1));
  return anchor;
}

AuthScheme scheme_from_name(const std::string& name) {
  if (name == "simple") return {AuthKind::simple, sha256};
  if (name == "mb") return {AuthKind::maniatis_baker, sha256};
  throw Error(Errc::bad_scheme, "scheme must be simple or mb");
}

ByteBuf read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::storage_io, "cannot read " + path);
  std::vector<char> raw((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
  return ByteBuf(raw.begin(), raw.end());
}

void write_file(const std::string& path, ByteView bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::storage_io, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::storage_io, "short write to " + path);
}

int verify_bundle_file(const std::string& in_path, bool membership,
                       const TrustAnchor& anchor,
                       const std::optional<TrustAnchor>& expected,
                       const std::string& log_path) {
  LogStore store = LogStore::open(log_path, /*writable=*/false);
  ByteBuf bytes = read_file(in_path);

  std::string reason;
  try {
    wire::DecodedBundle dec = wire::decode_bundle(bytes, store.hop_relation());
    if (dec.scheme != store.scheme().kind) {
      reason = "scheme-mismatch";
    } else if (membership) {
      VerifyResult r = verify_membership(dec.bundle, anchor, store.params());
      if (r.accepted) {
        std::cout << "ACCEPT\n";
        return 0;
      }
      reason = reject_reason_name(r.reason);
    } else {
      VerifyResult r =
          verify_advancement(dec.bundle, anchor, *expected, store.params());
      if (r.accepted) {
        std::cout << "ACCEPT\n";
        return 0;
      }
      reason = reject_reason_name(r.reason);
    }
  } catch (const Error& e) {
    reason = errc_name(e.code());
  }
  std::cout << "REJECT: " << reason << "\n";
  return 1;
}

void print_census(const CensusReport& r, bool csv) {
  if (csv) {
    std::cout << "n,pairs,max_hops,max_hops_i,max_hops_j,"
                 "max_digests_incl_genesis,max_digests_incl_i,max_digests_incl_j,"
                 "max_digests_excl_genesis,max_digests_excl_i,max_digests_excl_j,"
                 "mean_digests_incl_genesis,mean_digests_excl_genesis,"
                 "mean_dedup_savings_incl_genesis,mean_dedup_savings_excl_genesis\n";
    std::cout << r.n << ',' << r.pairs << ',' << r.max_hops << ','
              << r.max_hops_i << ',' << r.max_hops_j << ','
              << r.max_digests_incl_genesis << ',' << r.max_digests_incl_i
              << ',' << r.max_digests_incl_j << ','
              << r.max_digests_excl_genesis << ',' << r.max_digests_excl_i
              << ',' << r.max_digests_excl_j << ','
              << r.mean_digests_incl_genesis << ','
              << r.mean_digests_excl_genesis << ','
              << r.mean_dedup_savings_incl_genesis << ','
              << r.mean_dedup_savings_excl_genesis << '\n';
    return;
  }
  std::cout << "normalized advancement proofs for 1 <= i < j < " << r.n << " ("
            << r.pairs << " pairs)\n";
  std::cout << "longest: (" << r.max_hops_i << ", " << r.max_hops_j << ") with "
            << r.max_hops << " hops (" << r.max_hops
            << " indexes visited counting hop sources, " << r.max_hops + 1
            << " counting the target)\n";
  std::cout << "largest: (" << r.max_digests_incl_i << ", "
            << r.max_digests_incl_j << ") with " << r.max_digests_incl_genesis
            << " digests counting genesis; (" << r.max_digests_excl_i << ", "
            << r.max_digests_excl_j << ") with " << r.max_digests_excl_genesis
            << " omitting it\n";
  std::cout << "mean digests: " << r.mean_digests_incl_genesis
            << " counting genesis, " << r.mean_digests_excl_genesis
            << " omitting it\n";
  std::cout << "mean dedup savings: " << r.mean_dedup_savings_incl_genesis
            << " counting genesis, " << r.mean_dedup_savings_excl_genesis
            << " omitting it\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"authenticated append-only skip list"};
  app.require_subcommand(1);

  std::string log_path;
  std::string scheme_name = "simple";
  bool hex = false;

  // init
  auto* init = app.add_subcommand("init", "create a new log");
  std::string genesis_text;
  init->add_option("--log", log_path, "log file path")->required();
  init->add_option("--scheme", scheme_name, "authenticator scheme")
      ->check(CLI::IsMember({"simple", "mb"}));
  init->add_option("--genesis", genesis_text, "genesis datum");
  init->add_flag("--hex", hex, "treat data as hex");

  // append
  auto* append = app.add_subcommand("append", "append data, print index and digest");
  std::vector<std::string> data;
  append->add_option("--log", log_path, "log file path")->required();
  append->add_option("data", data, "data to append (stdin lines when empty)");
  append->add_flag("--hex", hex, "treat data as hex");

  // root
  auto* root = app.add_subcommand("root", "print the authenticator at an index");
  std::optional<Index> root_index;
  root->add_option("--log", log_path, "log file path")->required();
  root->add_option("index", root_index, "index (default: latest)");

  // prove-adv
  auto* prove_adv = app.add_subcommand("prove-adv", "write an advancement proof");
  Index arg_i = 0, arg_j = 0, arg_tgt = 0;
  std::string out_path, in_path;
  prove_adv->add_option("--log", log_path)->required();
  prove_adv->add_option("i", arg_i, "trusted lower index")->required();
  prove_adv->add_option("j", arg_j, "new higher index")->required();
  prove_adv->add_option("--out", out_path, "output file")->required();

  // prove-member
  auto* prove_member =
      app.add_subcommand("prove-member", "write a membership proof");
  prove_member->add_option("--log", log_path)->required();
  prove_member->add_option("tgt", arg_tgt, "proved index")->required();
  prove_member->add_option("j", arg_j, "trusted root index")->required();
  prove_member->add_option("--out", out_path, "output file")->required();

  // verify-adv
  auto* verify_adv = app.add_subcommand("verify-adv", "check an advancement proof");
  std::string anchor_text, expected_text, root_text;
  verify_adv->add_option("--log", log_path)->required();
  verify_adv->add_option("--in", in_path, "proof file")->required();
  verify_adv->add_option("--anchor", anchor_text, "trusted index:hexdigest")
      ->required();
  verify_adv->add_option("--expected", expected_text, "claimed index:hexdigest")
      ->required();

  // verify-member
  auto* verify_member =
      app.add_subcommand("verify-member", "check a membership proof");
  verify_member->add_option("--log", log_path)->required();
  verify_member->add_option("--in", in_path, "proof file")->required();
  verify_member->add_option("--root", root_text, "trusted index:hexdigest")
      ->required();

  // stats
  auto* stats = app.add_subcommand("stats", "proof-size census");
  Index census_n = 0;
  bool csv = false;
  stats->add_option("n", census_n, "upper bound (exclusive) on indexes")
      ->required();
  stats->add_flag("--csv", csv, "machine-readable output");

  // check-laws
  auto* check = app.add_subcommand("check-laws", "hop-relation law scan");
  Index laws_n = 0;
  check->add_option("n", laws_n, "largest hop source to check")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (init->parsed()) {
      LogStore::init(log_path, parse_datum(genesis_text, hex),
                     scheme_from_name(scheme_name));
      return 0;
    }
    if (append->parsed()) {
      LogStore store = LogStore::open(log_path);
      if (data.empty()) {
        std::string line;
        while (std::getline(std::cin, line)) data.push_back(line);
      }
      for (const std::string& text : data) {
        auto [index, digest] = store.append(parse_datum(text, hex));
        std::cout << index << " " << to_hex(digest) << "\n";
      }
      return 0;
    }
    if (root->parsed()) {
      LogStore store = LogStore::open(log_path, /*writable=*/false);
      Index j = root_index.value_or(store.size() - 1);
      std::cout << to_hex(store.lookup_digest(j)) << "\n";
      return 0;
    }
    if (prove_adv->parsed()) {
      LogStore store = LogStore::open(log_path, /*writable=*/false);
      ProofBundle b = mk_adv(store, arg_i, arg_j);
      write_file(out_path, wire::encode_bundle(b, store.scheme().kind));
      return 0;
    }
    if (prove_member->parsed()) {
      LogStore store = LogStore::open(log_path, /*writable=*/false);
      ProofBundle b = mk_membership(store, arg_tgt, arg_j);
      write_file(out_path, wire::encode_bundle(b, store.scheme().kind));
      return 0;
    }
    if (verify_adv->parsed())
      return verify_bundle_file(in_path, /*membership=*/false,
                                parse_anchor(anchor_text),
                                parse_anchor(expected_text), log_path);
    if (verify_member->parsed())
      return verify_bundle_file(in_path, /*membership=*/true,
                                parse_anchor(root_text), std::nullopt,
                                log_path);
    if (stats->parsed()) {
      print_census(census(census_n), csv);
      return 0;
    }
    if (check->parsed()) {
      LawReport laws = check_hop_laws(pow2_relation(), laws_n);
      LawReport mid = check_mid_levels(pow2_relation(), laws_n);
      LawReport equiv = check_max_level_equivalence(
          std::min<Index>(laws_n * 16, Index{1} << 16));
      for (const LawReport* r : {&laws, &mid, &equiv})
        for (const LawViolation& v : r->violations)
          std::cerr << v.law << ": " << v.detail << "\n";
      bool clean = laws.clean() && mid.clean() && equiv.clean();
      std::cout << (clean ? "clean" : "violations found") << " ("
                << laws.hops_checked << " hops, " << laws.pairs_checked
                << " pairs)\n";
      return clean ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
