// stegodoc: hide halftoned document scans in the LSBs of gray images.
//
// Exit codes: 0 ok, 1 usage or I/O error, 2 capacity exceeded,
// 3 corrupt payload (wrong key, wrong threshold or damaged image).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stegodoc/bench.hpp"
#include "stegodoc/bitfile.hpp"
#include "stegodoc/stegodoc.hpp"

namespace {

using namespace stegodoc;

enum ExitCode : int { kOk = 0, kUsage = 1, kCapacity = 2, kCorrupt = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_key(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
    v = std::stoull(hex ? text.substr(2) : text, &used, hex ? 16 : 10);
    if (hex) used += 2;
  } catch (const std::exception&) {
    throw UsageError("invalid key '" + text + "': expected a decimal or 0x-hex 64-bit value");
  }
  if (used != text.size() || text.empty() || text[0] == '-') {
    throw UsageError("invalid key '" + text + "': expected a decimal or 0x-hex 64-bit value");
  }
  return v;
}

// --key wins over STEGODOC_KEY.
StegoKey resolve_key(const std::optional<std::string>& flag) {
  if (flag) return {parse_key(*flag)};
  if (const char* env = std::getenv("STEGODOC_KEY"); env && *env) return {parse_key(env)};
  throw UsageError("no key given: pass --key or set STEGODOC_KEY");
}

MergeOrder parse_merge_order(const std::string& s) {
  if (s == "vertical") return MergeOrder::VerticalFirst;
  if (s == "horizontal") return MergeOrder::HorizontalFirst;
  throw UsageError("--merge-order must be 'vertical' or 'horizontal'");
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? bench::fmt4(*v) : std::string("undefined");
}

struct HalftoneArgs {
  std::string in;
  std::string out;
  bool inverse = false;
};

int cmd_halftone(const HalftoneArgs& a) {
  if (a.inverse) {
    netpbm::save_pgm(a.out, from_halftone(netpbm::load_pbm(a.in)));
  } else {
    netpbm::save_pbm(a.out, to_halftone(netpbm::load_pgm(a.in)));
  }
  return kOk;
}

struct InspectArgs {
  std::string doc;
  std::string halftone;
  std::size_t min_length = 4;
  std::string merge_order = "vertical";
  std::string set = "content";
};

int cmd_inspect(const InspectArgs& a) {
  if (a.doc.empty() == a.halftone.empty()) {
    throw UsageError("inspect needs exactly one of --doc or --halftone");
  }
  const BitImage ht = a.doc.empty() ? netpbm::load_pbm(a.halftone)
                                    : to_halftone(netpbm::load_pgm(a.doc));
  const BitImage msg = complement(ht);
  const Decomposition d = r_quadtree(msg, a.min_length, 1);

  std::vector<Rect> rects;
  if (a.set == "leaves") {
    rects = d.leaves;
  } else if (a.set == "content") {
    rects = content_rects(msg, d);
  } else if (a.set == "merged") {
    rects = merge_rects(split_oversized(content_rects(msg, d)), parse_merge_order(a.merge_order));
  } else {
    throw UsageError("--set must be leaves, content or merged");
  }
  std::cout << "x,y,w,h,ones_count\n";
  for (const auto& r : rects) {
    std::cout << r.x << ',' << r.y << ',' << r.w << ',' << r.h << ',' << ones_in(msg, r) << '\n';
  }
  return kOk;
}

struct EmbedArgs {
  std::string host;
  std::string doc;
  std::optional<std::string> key;
  double sd_threshold = 2.5;
  std::size_t min_length = 4;
  std::string merge_order = "vertical";
  std::string out;
  std::string stats;
};

int cmd_embed(const EmbedArgs& a) {
  const StegoKey key = resolve_key(a.key);
  if (!a.stats.empty() && a.stats != "csv") throw UsageError("--stats only supports 'csv'");
  const GrayImage host = netpbm::load_pgm(a.host);
  const GrayImage doc = netpbm::load_pgm(a.doc);
  HideOptions opts{EmbedParams{a.sd_threshold}, a.min_length, parse_merge_order(a.merge_order)};
  const HideResult res = hide_document(host, doc, key, opts);
  netpbm::save_pgm(a.out, res.stego);
  if (a.stats == "csv") {
    const auto& s = res.stats;
    std::cout << "host_rows,host_cols,doc_rows,doc_cols,leaves,content_rects,blocks,payload_bits,"
                 "words,capacity_words,embedding_rate_bpp,physical_rate_bpp,psnr_db,ssim\n"
              << s.host_rows << ',' << s.host_cols << ',' << s.doc_rows << ',' << s.doc_cols << ','
              << s.leaf_count << ',' << s.content_rect_count << ',' << s.block_count << ','
              << s.payload_bits << ',' << s.words << ',' << s.capacity_words << ','
              << bench::fmt4(s.embedding_rate_bpp) << ',' << bench::fmt4(s.physical_rate_bpp)
              << ',' << bench::fmt4(psnr(host, res.stego)) << ','
              << fmt_opt(ssim_global(host, res.stego)) << '\n';
  }
  return kOk;
}

struct ExtractArgs {
  std::string stego;
  std::optional<std::string> key;
  double sd_threshold = 2.5;
  std::string out_halftone;
  std::string out_gray;
};

int cmd_extract(const ExtractArgs& a) {
  const StegoKey key = resolve_key(a.key);
  if (a.out_halftone.empty() && a.out_gray.empty()) {
    throw UsageError("extract needs --out-halftone and/or --out-gray");
  }
  const RevealResult res = reveal_document(netpbm::load_pgm(a.stego), key, {a.sd_threshold});
  if (!a.out_halftone.empty()) netpbm::save_pbm(a.out_halftone, res.halftone);
  if (!a.out_gray.empty()) netpbm::save_pgm(a.out_gray, res.document);
  return kOk;
}

struct MetricsArgs {
  std::string ref;
  std::string test;
};

int cmd_metrics(const MetricsArgs& a) {
  const GrayImage ref = netpbm::load_pgm(a.ref);
  const GrayImage test = netpbm::load_pgm(a.test);
  if (ref.rows() != test.rows() || ref.cols() != test.cols()) {
    throw UsageError("--ref and --test differ in size");
  }
  std::cout << "psnr,ssim\n" << bench::fmt4(psnr(ref, test)) << ',' << fmt_opt(ssim_global(ref, test)) << '\n';
  return kOk;
}

struct CodecArgs {
  std::string mode;
  std::string in;
  std::string out;
};

// encode: message bits -> 12-bit words; decode: the reverse.
int cmd_codec(const CodecArgs& a) {
  const BitVector in = bitfile::load(a.in);
  if (a.mode == "encode") {
    bitfile::save(a.out, bitfile::words_to_bits(tokens_to_words(encode_stream(in))));
  } else {
    bitfile::save(a.out, decode_stream(words_to_tokens(bitfile::bits_to_words(in))));
  }
  return kOk;
}

struct BenchArgs {
  std::vector<std::string> hosts;
  std::vector<std::string> docs;
  std::vector<double> sd_thresholds{0.0, 2.5, 5.0};
  std::vector<std::size_t> min_lengths{4};
  std::string merge_order = "vertical";
  bool fill = false;
  unsigned jobs = 1;
  std::string out;
};

int cmd_bench(const BenchArgs& a) {
  bench::Options opt;
  opt.hosts.assign(a.hosts.begin(), a.hosts.end());
  opt.docs.assign(a.docs.begin(), a.docs.end());
  opt.sd_thresholds = a.sd_thresholds;
  opt.min_lengths = a.min_lengths;
  opt.merge_order = parse_merge_order(a.merge_order);
  opt.fill = a.fill;
  opt.jobs = a.jobs;
  const auto rows = bench::run(opt);
  if (a.out.empty() || a.out == "-") {
    bench::write_csv(std::cout, rows);
  } else {
    std::ofstream f(a.out);
    if (!f) throw FormatError("cannot write " + a.out);
    bench::write_csv(f, rows);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stegodoc: hide scanned documents in gray-level images"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "stegodoc 0.1.0");

  HalftoneArgs ht;
  auto* sub_ht = app.add_subcommand("halftone", "Error-diffusion halftone (PGM -> PBM) or its inverse");
  sub_ht->add_option("--in", ht.in, "Input image")->required()->check(CLI::ExistingFile);
  sub_ht->add_option("--out", ht.out, "Output image")->required();
  sub_ht->add_flag("--inverse", ht.inverse, "Gaussian inverse halftone (PBM -> PGM)");

  InspectArgs in;
  auto* sub_in = app.add_subcommand("inspect", "Dump quadtree blocks as CSV x,y,w,h,ones_count");
  sub_in->add_option("--doc", in.doc, "Gray document (PGM), halftoned first")->check(CLI::ExistingFile);
  sub_in->add_option("--halftone", in.halftone, "Halftone document (PBM)")->check(CLI::ExistingFile);
  sub_in->add_option("--min-length", in.min_length, "Minimum block side")->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub_in->add_option("--set", in.set, "leaves, content or merged")->capture_default_str();
  sub_in->add_option("--merge-order", in.merge_order, "vertical or horizontal pass first")
      ->capture_default_str();

  EmbedArgs em;
  auto* sub_em = app.add_subcommand("embed", "Hide a document in a host image");
  sub_em->add_option("--host", em.host, "Host image (PGM)")->required()->check(CLI::ExistingFile);
  sub_em->add_option("--doc", em.doc, "Document scan (PGM)")->required()->check(CLI::ExistingFile);
  sub_em->add_option("--key", em.key, "Shared key, decimal or 0x-hex (default: $STEGODOC_KEY)");
  sub_em->add_option("--sd-threshold", em.sd_threshold, "Texture threshold T3")->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  sub_em->add_option("--min-length", em.min_length, "Minimum quadtree block side")
      ->capture_default_str()->check(CLI::PositiveNumber);
  sub_em->add_option("--merge-order", em.merge_order, "vertical or horizontal pass first")
      ->capture_default_str();
  sub_em->add_option("--out", em.out, "Stego image (PGM)")->required();
  sub_em->add_option("--stats", em.stats, "Print statistics (csv)");

  ExtractArgs ex;
  auto* sub_ex = app.add_subcommand("extract", "Recover a hidden document");
  sub_ex->add_option("--stego", ex.stego, "Stego image (PGM)")->required()->check(CLI::ExistingFile);
  sub_ex->add_option("--key", ex.key, "Shared key, decimal or 0x-hex (default: $STEGODOC_KEY)");
  sub_ex->add_option("--sd-threshold", ex.sd_threshold, "Texture threshold T3")->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  sub_ex->add_option("--out-halftone", ex.out_halftone, "Recovered halftone (PBM)");
  sub_ex->add_option("--out-gray", ex.out_gray, "Inverse-halftoned document (PGM)");

  MetricsArgs me;
  auto* sub_me = app.add_subcommand("metrics", "Print psnr,ssim of --test against --ref");
  sub_me->add_option("--ref", me.ref, "Reference image (PGM)")->required()->check(CLI::ExistingFile);
  sub_me->add_option("--test", me.test, "Test image (PGM)")->required()->check(CLI::ExistingFile);

  CodecArgs co;
  auto* sub_co = app.add_subcommand("codec", "Decimal-code raw bit files");
  sub_co->add_option("mode", co.mode, "encode or decode")->required()
      ->check(CLI::IsMember({"encode", "decode"}));
  sub_co->add_option("--in", co.in, "Input bit file")->required()->check(CLI::ExistingFile);
  sub_co->add_option("--out", co.out, "Output bit file")->required();

  BenchArgs be;
  auto* sub_be = app.add_subcommand("bench", "Sweep hosts x docs x thresholds x block sizes, CSV out");
  sub_be->add_option("--hosts", be.hosts, "Host images (PGM)");
  sub_be->add_option("--docs", be.docs, "Document scans (PGM)");
  sub_be->add_option("--sd-thresholds", be.sd_thresholds, "Texture thresholds")->capture_default_str()
      ->delimiter(',');
  sub_be->add_option("--min-lengths", be.min_lengths, "Minimum block sides")->capture_default_str()
      ->delimiter(',');
  sub_be->add_option("--merge-order", be.merge_order, "vertical or horizontal pass first")
      ->capture_default_str();
  sub_be->add_flag("--fill", be.fill, "Crop each document to the largest slice that fits");
  sub_be->add_option("--jobs", be.jobs, "Worker threads")->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub_be->add_option("--out", be.out, "CSV output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sub_ht) return cmd_halftone(ht);
    if (*sub_in) return cmd_inspect(in);
    if (*sub_em) return cmd_embed(em);
    if (*sub_ex) return cmd_extract(ex);
    if (*sub_me) return cmd_metrics(me);
    if (*sub_co) return cmd_codec(co);
    if (*sub_be) return cmd_bench(be);
  } catch (const CapacityExceeded& e) {
    std::cerr << "error: " << e.what() << " (deficit " << e.deficit() << " words)\n";
    return kCapacity;
  } catch (const CorruptPayload& e) {
    std::cerr << "error: " << e.what() << " (wrong key or threshold?)\n";
    return kCorrupt;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
