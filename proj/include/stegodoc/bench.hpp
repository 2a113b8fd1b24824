#pragma once

// Parameter sweep over hosts x documents x SD thresholds x minimum block
// sizes. Every row hides, reveals and checks the halftone bit for bit.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "stegodoc/netpbm.hpp"
#include "stegodoc/pipeline.hpp"

namespace stegodoc::bench {

struct Options {
  std::vector<std::filesystem::path> hosts;
  std::vector<std::filesystem::path> docs;
  std::vector<double> sd_thresholds{0.0, 2.5, 5.0};
  std::vector<std::size_t> min_lengths{4};
  MergeOrder merge_order = MergeOrder::VerticalFirst;
  /// Crop the document to the tallest top slice that fits, instead of
  /// failing the row when the whole page does not.
  bool fill = false;
  unsigned jobs = 1;
};

struct Row {
  std::string host;
  std::string doc;
  double sd_threshold = 0.0;
  std::size_t min_length = 0;
  std::uint64_t key = 0;
  std::size_t doc_rows = 0;
  std::size_t doc_cols = 0;
  std::size_t embedded_rows = 0;
  std::size_t blocks = 0;
  std::size_t payload_bits = 0;
  std::size_t words = 0;
  std::size_t capacity_words = 0;
  double embedding_rate_bpp = 0.0;
  double physical_rate_bpp = 0.0;
  double psnr_db = 0.0;
  double ssim = 0.0;
  double doc_psnr_db = 0.0;
  double doc_ssim = 0.0;
  bool roundtrip_ok = false;
  std::string error;
};

/// Key used for a given host/document pair. Rows that differ only in
/// threshold or block size share it, so their stego images are comparable.
inline std::uint64_t pair_key(std::size_t pair_index) {
  std::uint64_t z = 0x5EED5EED5EED5EEDull + 0x9E3779B97F4A7C15ull * (pair_index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Largest number of top rows of `doc` whose payload fits the host. Error
/// diffusion only looks forward, so the halftone of a top slice equals the
/// top slice of the full halftone and the halftone is computed once.
inline std::size_t max_fitting_rows(const GrayImage& host, const GrayImage& doc,
                                    const HideOptions& opts) {
  const std::size_t available = capacity_words(embeddable_mask(host, opts.embed));
  const BitImage message = complement(to_halftone(doc));
  auto fits = [&](std::size_t rows) {
    BitImage slice = crop(message, Rect{0, 0, static_cast<std::uint32_t>(doc.cols()),
                                        static_cast<std::uint32_t>(rows)});
    return encode_message(slice, opts.min_length, opts.merge_order).words.size() <= available;
  };
  if (fits(doc.rows())) return doc.rows();
  std::size_t lo = 0;  // fits (0 rows is trivially "fits")
  std::size_t hi = doc.rows();
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

inline Row run_case(const GrayImage& host, const GrayImage& doc_full, double sd_threshold,
                    std::size_t min_length, std::uint64_t key, const Options& opt) {
  Row row;
  row.sd_threshold = sd_threshold;
  row.min_length = min_length;
  row.key = key;
  row.doc_rows = doc_full.rows();
  row.doc_cols = doc_full.cols();
  try {
    HideOptions hide{EmbedParams{sd_threshold}, min_length, opt.merge_order};
    GrayImage doc = doc_full;
    if (opt.fill) {
      const std::size_t rows = max_fitting_rows(host, doc_full, hide);
      if (rows == 0) throw CapacityExceeded(capacity_words(embeddable_mask(host, hide.embed)), 0);
      if (rows < doc_full.rows()) {
        doc = crop(doc_full, Rect{0, 0, static_cast<std::uint32_t>(doc_full.cols()),
                                  static_cast<std::uint32_t>(rows)});
      }
    }
    row.embedded_rows = doc.rows();
    const HideResult hidden = hide_document(host, doc, StegoKey{key}, hide);
    row.blocks = hidden.stats.block_count;
    row.payload_bits = hidden.stats.payload_bits;
    row.words = hidden.stats.words;
    row.capacity_words = hidden.stats.capacity_words;
    row.embedding_rate_bpp = hidden.stats.embedding_rate_bpp;
    row.physical_rate_bpp = hidden.stats.physical_rate_bpp;
    row.psnr_db = psnr(host, hidden.stego);
    row.ssim = ssim_global(host, hidden.stego).value_or(std::nan(""));

    const RevealResult revealed = reveal_document(hidden.stego, StegoKey{key}, hide.embed);
    row.roundtrip_ok = revealed.halftone == hidden.halftone;
    row.doc_psnr_db = psnr(doc, revealed.document);
    row.doc_ssim = ssim_global(doc, revealed.document).value_or(std::nan(""));
    if (!row.roundtrip_ok) row.error = "halftone mismatch";
  } catch (const std::exception& e) {
    row.roundtrip_ok = false;
    row.error = e.what();
  }
  return row;
}

inline std::vector<Row> run(const Options& opt) {
  struct Job {
    std::size_t host;
    std::size_t doc;
    double t3;
    std::size_t min_length;
  };
  std::vector<Job> jobs;
  for (std::size_t h = 0; h < opt.hosts.size(); ++h)
    for (std::size_t d = 0; d < opt.docs.size(); ++d)
      for (double t3 : opt.sd_thresholds)
        for (std::size_t ml : opt.min_lengths) jobs.push_back({h, d, t3, ml});

  // Load each file once up front; unreadable files surface as row errors.
  std::map<std::filesystem::path, GrayImage> images;
  std::map<std::filesystem::path, std::string> load_errors;
  auto load = [&](const std::filesystem::path& p) {
    if (images.count(p) || load_errors.count(p)) return;
    try {
      images.emplace(p, netpbm::load_pgm(p));
    } catch (const std::exception& e) {
      load_errors.emplace(p, e.what());
    }
  };
  for (const auto& p : opt.hosts) load(p);
  for (const auto& p : opt.docs) load(p);

  std::vector<Row> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& j = jobs[i];
      const auto& hp = opt.hosts[j.host];
      const auto& dp = opt.docs[j.doc];
      const std::uint64_t key = pair_key(j.host * opt.docs.size() + j.doc);
      Row row;
      if (load_errors.count(hp) || load_errors.count(dp)) {
        row.sd_threshold = j.t3;
        row.min_length = j.min_length;
        row.key = key;
        row.error = load_errors.count(hp) ? load_errors.at(hp) : load_errors.at(dp);
      } else {
        row = run_case(images.at(hp), images.at(dp), j.t3, j.min_length, key, opt);
      }
      row.host = hp.string();
      row.doc = dp.string();
      rows[i] = std::move(row);
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

inline constexpr const char* kCsvHeader =
    "host,doc,sd_threshold,min_length,key,doc_rows,doc_cols,embedded_rows,blocks,payload_bits,"
    "words,capacity_words,embedding_rate_bpp,physical_rate_bpp,psnr_db,ssim,doc_psnr_db,"
    "doc_ssim,roundtrip_ok,error";

inline std::string fmt4(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline void write_csv(std::ostream& out, const std::vector<Row>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << csv_escape(r.host) << ',' << csv_escape(r.doc) << ',' << fmt4(r.sd_threshold) << ','
        << r.min_length << ',' << r.key << ',' << r.doc_rows << ',' << r.doc_cols << ','
        << r.embedded_rows << ',' << r.blocks << ',' << r.payload_bits << ',' << r.words << ','
        << r.capacity_words << ',' << fmt4(r.embedding_rate_bpp) << ','
        << fmt4(r.physical_rate_bpp) << ',' << fmt4(r.psnr_db) << ',' << fmt4(r.ssim) << ','
        << fmt4(r.doc_psnr_db) << ',' << fmt4(r.doc_ssim) << ','
        << (r.roundtrip_ok ? "true" : "false") << ',' << csv_escape(r.error) << '\n';
  }
}

}  // namespace stegodoc::bench
