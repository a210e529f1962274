#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fflab/field.hpp"

namespace fflab {

struct SweepRecord {
  std::uint64_t index = 0;  // monic enumeration index of D
  Poly D;
  mpq_class lambda;
  std::vector<std::int64_t> L;
};

// All of H_n for one q, records in enumeration order.
struct Block {
  std::uint32_t q = 0;
  int n = 0;
  std::vector<SweepRecord> records;
  std::string digest;

  const SweepRecord* find(std::uint64_t index) const;
  std::vector<mpq_class> lambdas() const;
};

std::string record_line(const FieldCtx& F, const SweepRecord& r);
SweepRecord parse_record(const FieldCtx& F, const std::string& line);
// SHA-256 hex over the canonical lines joined by '\n'
std::string block_digest(const FieldCtx& F, const std::vector<SweepRecord>& recs);

// Computes H_n with `workers` threads. Results do not depend on the worker count.
Block compute_block(const FieldCtx& F, int n, int workers);

class SweepCache {
 public:
  explicit SweepCache(std::filesystem::path dir);
  // $FFLAB_CACHE_DIR or ./fflab_cache
  static SweepCache from_env();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path records_path(std::uint32_t q, int n) const;
  std::filesystem::path manifest_path(std::uint32_t q, int n) const;

  // complete block only; verifies count and digest
  std::optional<Block> load(const FieldCtx& F, int n) const;
  // loads, or computes the missing records and completes the block
  Block ensure(const FieldCtx& F, int n, int workers, bool* computed = nullptr) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace fflab
