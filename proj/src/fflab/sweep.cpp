#include "fflab/sweep.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "fflab/lfunc.hpp"
#include "json.hpp"

namespace fflab {

using nlohmann::json;

const SweepRecord* Block::find(std::uint64_t index) const {
  auto it = std::lower_bound(records.begin(), records.end(), index,
                             [](const SweepRecord& r, std::uint64_t i) { return r.index < i; });
  if (it == records.end() || it->index != index) return nullptr;
  return &*it;
}

std::vector<mpq_class> Block::lambdas() const {
  std::vector<mpq_class> out;
  out.reserve(records.size());
  for (auto& r : records) out.push_back(r.lambda);
  return out;
}

std::string record_line(const FieldCtx& F, const SweepRecord& r) {
  // keys sorted by the default object type, so dump() is canonical
  json j;
  j["index"] = r.index;
  j["D"] = format_poly(F, r.D);
  j["lambda_num"] = r.lambda.get_num().get_str();
  j["lambda_den"] = r.lambda.get_den().get_str();
  j["L"] = r.L;
  return j.dump();
}

SweepRecord parse_record(const FieldCtx& F, const std::string& line) {
  SweepRecord r;
  try {
    json j = json::parse(line);
    r.index = j.at("index").get<std::uint64_t>();
    r.D = parse_poly(F, j.at("D").get<std::string>());
    r.lambda = mpq_class(mpz_class(j.at("lambda_num").get<std::string>()),
                         mpz_class(j.at("lambda_den").get<std::string>()));
    r.lambda.canonicalize();
    r.L = j.at("L").get<std::vector<std::int64_t>>();
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("bad cache record: ") + e.what());
  }
  return r;
}

std::string block_digest(const FieldCtx& F, const std::vector<SweepRecord>& recs) {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  bool first = true;
  for (auto& r : recs) {
    if (!first) EVP_DigestUpdate(ctx, "\n", 1);
    first = false;
    std::string s = record_line(F, r);
    EVP_DigestUpdate(ctx, s.data(), s.size());
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

namespace {

std::uint64_t squarefree_count(const FieldCtx& F, int n) {
  return n == 1 ? F.q() : monic_count(F, n) - monic_count(F, n - 1);
}

// Fills the records of H_n whose index is not in `have`, chunk by chunk.
std::vector<SweepRecord> compute_missing(const FieldCtx& F, int n, int workers,
                                         const std::vector<std::uint64_t>& have) {
  const std::uint64_t total = monic_count(F, n);
  const std::uint64_t nchunks = std::min<std::uint64_t>(total, 256);
  const std::uint64_t step = (total + nchunks - 1) / nchunks;
  EulerEvaluator ev(F, n);
  std::vector<std::vector<SweepRecord>> out(nchunks);
  std::atomic<std::uint64_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto work = [&] {
    for (;;) {
      std::uint64_t c = next++;
      if (c >= nchunks) return;
      try {
        for_each_poly(F, PolyKind::Squarefree, n, c * step, (c + 1) * step, [&](const Poly& D, std::uint64_t idx) {
          if (std::binary_search(have.begin(), have.end(), idx)) return;
          SweepRecord r;
          r.index = idx;
          r.D = D;
          r.L = ev.coeffs(D);
          r.lambda = lambda_exact(F.q(), r.L);
          out[c].push_back(std::move(r));
        });
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  const int nt = std::max(1, workers);
  std::vector<std::thread> pool;
  for (int i = 1; i < nt; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  std::vector<SweepRecord> all;
  for (auto& v : out)
    for (auto& r : v) all.push_back(std::move(r));
  return all;
}

// spot-check a few records against the direct method when that is cheap
void cross_check(const FieldCtx& F, int n, const std::vector<SweepRecord>& recs) {
  if (recs.empty() || n < 2 || monic_count(F, n - 1) > 20000) return;
  const std::size_t stride = std::max<std::size_t>(1, recs.size() / 8);
  for (std::size_t i = 0; i < recs.size(); i += stride)
    if (l_polynomial(F, recs[i].D, LMethod::Direct).coeffs != recs[i].L)
      throw std::logic_error("sweep record disagrees with the direct L-polynomial");
}

}  // namespace

Block compute_block(const FieldCtx& F, int n, int workers) {
  if (n < 1) fail(ErrorCode::InvalidDegree, "n must be >= 1");
  Block b;
  b.q = F.q();
  b.n = n;
  b.records = compute_missing(F, n, workers, {});
  cross_check(F, n, b.records);
  b.digest = block_digest(F, b.records);
  return b;
}

SweepCache::SweepCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

SweepCache SweepCache::from_env() {
  const char* env = std::getenv("FFLAB_CACHE_DIR");
  return SweepCache(env && *env ? std::filesystem::path(env) : std::filesystem::path("fflab_cache"));
}

std::filesystem::path SweepCache::records_path(std::uint32_t q, int n) const {
  return dir_ / ("q" + std::to_string(q)) / ("n" + std::to_string(n) + ".jsonl");
}

std::filesystem::path SweepCache::manifest_path(std::uint32_t q, int n) const {
  return dir_ / ("q" + std::to_string(q)) / ("n" + std::to_string(n) + ".manifest.json");
}

namespace {

std::vector<SweepRecord> read_records(const FieldCtx& F, const std::filesystem::path& p) {
  std::vector<SweepRecord> recs;
  std::ifstream in(p);
  if (!in) return recs;
  std::string line;
  std::map<std::uint64_t, SweepRecord> by_index;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SweepRecord r;
    try {
      r = parse_record(F, line);
    } catch (const Error&) {
      continue;  // torn last line after an interrupted run
    }
    auto [it, fresh] = by_index.emplace(r.index, r);
    if (!fresh && (it->second.lambda != r.lambda || it->second.L != r.L))
      fail(ErrorCode::Io, "conflicting duplicate records in " + p.string());
  }
  for (auto& [i, r] : by_index) recs.push_back(std::move(r));
  return recs;
}

}  // namespace

std::optional<Block> SweepCache::load(const FieldCtx& F, int n) const {
  std::ifstream mf(manifest_path(F.q(), n));
  if (!mf) return std::nullopt;
  json m;
  try {
    mf >> m;
  } catch (const json::exception&) {
    return std::nullopt;
  }
  Block b;
  b.q = F.q();
  b.n = n;
  b.records = read_records(F, records_path(F.q(), n));
  if (b.records.size() != squarefree_count(F, n)) return std::nullopt;
  b.digest = block_digest(F, b.records);
  if (m.value("digest", std::string()) != b.digest) fail(ErrorCode::Io, "cache digest mismatch for q=" +
                                                         std::to_string(F.q()) + " n=" + std::to_string(n));
  return b;
}

Block SweepCache::ensure(const FieldCtx& F, int n, int workers, bool* computed) const {
  if (computed) *computed = false;
  if (auto b = load(F, n)) return *b;
  const auto rp = records_path(F.q(), n);
  std::filesystem::create_directories(rp.parent_path());
  std::vector<SweepRecord> have = read_records(F, rp);
  std::vector<std::uint64_t> idx;
  for (auto& r : have) idx.push_back(r.index);
  auto fresh = compute_missing(F, n, workers, idx);
  cross_check(F, n, fresh);
  if (!fresh.empty()) {
    std::ofstream out(rp, std::ios::app);
    // a torn line from an interrupted run must not swallow the next record
    if (!have.empty() || std::filesystem::file_size(rp) > 0) out << '\n';
    for (auto& r : fresh) out << record_line(F, r) << '\n';
    if (!out) fail(ErrorCode::Io, "cannot write " + rp.string());
    if (computed) *computed = true;
  }
  Block b;
  b.q = F.q();
  b.n = n;
  b.records = std::move(have);
  for (auto& r : fresh) b.records.push_back(std::move(r));
  std::sort(b.records.begin(), b.records.end(),
            [](const SweepRecord& a, const SweepRecord& c) { return a.index < c.index; });
  if (b.records.size() != squarefree_count(F, n)) throw std::logic_error("incomplete sweep block");
  b.digest = block_digest(F, b.records);
  json m;
  m["q"] = F.q();
  m["n"] = n;
  m["count"] = b.records.size();
  m["digest"] = b.digest;
  m["digest_algorithm"] = "sha256";
  std::ofstream mo(manifest_path(F.q(), n));
  mo << m.dump(2) << '\n';
  if (!mo) fail(ErrorCode::Io, "cannot write manifest");
  return b;
}

}  // namespace fflab
