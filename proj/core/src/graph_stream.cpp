#include "streampart/graph_stream.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <variant>

namespace streampart {

namespace detail {

class LineSource {
 public:
  virtual ~LineSource() = default;
  // Reads one line without its terminator; false at end of input.
  virtual bool read(std::string_view& line) = 0;
  // Byte offset of the next unread line.
  [[nodiscard]] virtual std::uint64_t offset() const = 0;
};

namespace {

std::string_view chomp(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

class BufferLineSource final : public LineSource {
 public:
  BufferLineSource(std::shared_ptr<const std::string> text, std::uint64_t offset)
      : text_(std::move(text)), pos_(offset) {}

  bool read(std::string_view& line) override {
    if (pos_ >= text_->size()) return false;
    const std::string_view all(*text_);
    auto end = all.find('\n', pos_);
    if (end == std::string_view::npos) end = all.size();
    line = chomp(all.substr(pos_, end - pos_));
    pos_ = std::min<std::uint64_t>(end + 1, all.size() + 1);
    return true;
  }

  [[nodiscard]] std::uint64_t offset() const override { return pos_; }

 private:
  std::shared_ptr<const std::string> text_;
  std::uint64_t pos_;
};

class FileLineSource final : public LineSource {
 public:
  FileLineSource(const std::string& path, std::uint64_t offset) : in_(path, std::ios::binary) {
    if (!in_) throw std::runtime_error("cannot open '" + path + "'");
    in_.seekg(static_cast<std::streamoff>(offset));
    pos_ = offset;
  }

  bool read(std::string_view& line) override {
    if (!std::getline(in_, buffer_)) {
      if (in_.bad()) throw std::runtime_error("read error");
      return false;
    }
    pos_ += buffer_.size() + 1;
    line = chomp(buffer_);
    return true;
  }

  [[nodiscard]] std::uint64_t offset() const override { return pos_; }

 private:
  std::ifstream in_;
  std::string buffer_;
  std::uint64_t pos_ = 0;
};

bool is_comment(std::string_view line) { return !line.empty() && line.front() == '%'; }

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

// Whitespace tokenizer over one line.
class Tokens {
 public:
  explicit Tokens(std::string_view line) : rest_(line) {}

  bool next(std::string_view& token) {
    const auto begin = rest_.find_first_not_of(" \t");
    if (begin == std::string_view::npos) return false;
    rest_.remove_prefix(begin);
    auto end = rest_.find_first_of(" \t");
    if (end == std::string_view::npos) end = rest_.size();
    token = rest_.substr(0, end);
    rest_.remove_prefix(end);
    return true;
  }

 private:
  std::string_view rest_;
};

template <typename T>
bool parse_number(std::string_view token, T& value) {
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc{} && ptr == last;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t arc_hash(NodeId from, NodeId to, EdgeWeight w) {
  return mix(mix(mix(from) ^ to) ^ static_cast<std::uint64_t>(w));
}

}  // namespace
}  // namespace detail

struct GraphStream::Source {
  std::variant<std::string, std::shared_ptr<const std::string>> where;

  [[nodiscard]] std::unique_ptr<detail::LineSource> open_at(std::uint64_t offset) const {
    if (const auto* path = std::get_if<std::string>(&where)) {
      return std::make_unique<detail::FileLineSource>(*path, offset);
    }
    return std::make_unique<detail::BufferLineSource>(
        std::get<std::shared_ptr<const std::string>>(where), offset);
  }
};

GraphStream::GraphStream(std::shared_ptr<const Source> source, StreamOptions options)
    : source_(std::move(source)), options_(options), lines_(source_->open_at(0)) {
  parse_header();
  body_offset_ = lines_->offset();
  first_id_ = 0;
  end_id_ = header_.n;
  next_id_ = 0;
}

GraphStream::GraphStream(GraphStream&&) noexcept = default;
GraphStream& GraphStream::operator=(GraphStream&&) noexcept = default;
GraphStream::~GraphStream() = default;

GraphStream GraphStream::open_file(const std::string& path, StreamOptions options) {
  auto source = std::make_shared<Source>();
  source->where = path;
  return GraphStream(std::move(source), options);
}

GraphStream GraphStream::from_buffer(std::string text, StreamOptions options) {
  auto source = std::make_shared<Source>();
  source->where = std::make_shared<const std::string>(std::move(text));
  return GraphStream(std::move(source), options);
}

GraphStream GraphStream::from_graph(const Graph& graph) { return from_buffer(to_metis(graph)); }

void GraphStream::fail(const std::string& what) const {
  if (next_id_ < end_id_) throw ParseError("node " + std::to_string(next_id_ + 1) + ": " + what);
  throw ParseError(what);
}

void GraphStream::parse_header() {
  std::string_view line;
  do {
    if (!lines_->read(line)) throw ParseError("header: missing header line");
  } while (detail::is_comment(line));

  detail::Tokens tokens(line);
  std::string_view tok;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  if (!tokens.next(tok) || !detail::parse_number(tok, n) || n == 0) {
    throw ParseError("header: malformed header (expected 'n m [fmt]' with n >= 1)");
  }
  if (!tokens.next(tok) || !detail::parse_number(tok, m)) {
    throw ParseError("header: malformed header (missing edge count)");
  }
  header_.n = n;
  header_.m = m;
  if (tokens.next(tok)) {
    if (tok == "0" || tok == "00" || tok == "000") {
    } else if (tok == "1" || tok == "01" || tok == "001") {
      header_.edge_weights = true;
    } else if (tok == "10" || tok == "010") {
      header_.node_weights = true;
    } else if (tok == "11" || tok == "011") {
      header_.node_weights = true;
      header_.edge_weights = true;
    } else {
      throw ParseError("header: unsupported fmt '" + std::string(tok) + "'");
    }
    if (tokens.next(tok)) {
      std::uint64_t ncon = 0;
      if (!detail::parse_number(tok, ncon) || ncon != 1) {
        throw ParseError("header: only a single node constraint is supported");
      }
    }
    if (tokens.next(tok)) throw ParseError("header: trailing tokens");
  }
}

bool GraphStream::next(NodeRecord& record) {
  if (done_) return false;
  if (next_id_ >= end_id_) {
    finish();
    return false;
  }

  std::string_view line;
  do {
    if (!lines_->read(line)) {
      done_ = true;
      fail("fewer node records than the header announces");
    }
  } while (detail::is_comment(line));

  record.id = next_id_;
  record.weight = 1;
  record.neighbors.clear();

  detail::Tokens tokens(line);
  std::string_view tok;
  if (header_.node_weights) {
    if (!tokens.next(tok)) fail("missing node weight");
    if (!detail::parse_number(tok, record.weight)) fail("non-numeric token '" + std::string(tok) + "'");
    if (record.weight <= 0) fail("node weight must be positive");
  }
  while (tokens.next(tok)) {
    std::uint64_t target = 0;
    if (!detail::parse_number(tok, target)) fail("non-numeric token '" + std::string(tok) + "'");
    if (target == 0 || target > header_.n) fail("neighbor index out of range");
    EdgeWeight w = 1;
    if (header_.edge_weights) {
      if (!tokens.next(tok)) fail("missing edge weight");
      if (!detail::parse_number(tok, w)) fail("non-numeric token '" + std::string(tok) + "'");
      if (w <= 0) fail("edge weight must be positive");
    }
    const NodeId u = target - 1;
    if (u == record.id) {
      if (options_.sanitize) continue;
      fail("self loop");
    }
    record.neighbors.push_back({u, w});
  }

  // Duplicate detection by sorting (id, position) pairs.
  auto& scratch = dup_scratch_;
  scratch.clear();
  for (std::size_t i = 0; i < record.neighbors.size(); ++i) {
    scratch.emplace_back(record.neighbors[i].id, i);
  }
  std::sort(scratch.begin(), scratch.end());
  bool has_duplicates = false;
  for (std::size_t i = 1; i < scratch.size(); ++i) {
    if (scratch[i].first == scratch[i - 1].first) {
      if (!options_.sanitize) fail("duplicate neighbor");
      has_duplicates = true;
      record.neighbors[scratch[i].second].id = header_.n;  // marks a later occurrence
    }
  }
  if (has_duplicates) {
    std::erase_if(record.neighbors, [&](const Neighbor& nb) { return nb.id == header_.n; });
  }

  degree_sum_ += record.neighbors.size();
  for (const auto& nb : record.neighbors) {
    symmetry_checksum_ += detail::arc_hash(record.id, nb.id, nb.weight);
    symmetry_checksum_ -= detail::arc_hash(nb.id, record.id, nb.weight);
  }
  ++next_id_;
  return true;
}

std::optional<NodeRecord> GraphStream::next() {
  NodeRecord record;
  if (!next(record)) return std::nullopt;
  return record;
}

void GraphStream::finish() {
  done_ = true;
  if (!whole_graph_) return;
  std::string_view line;
  while (lines_->read(line)) {
    if (!detail::is_comment(line) && !detail::is_blank(line)) {
      fail("more node records than the header announces");
    }
  }
  if (options_.sanitize) return;
  if (degree_sum_ != 2 * header_.m) {
    fail("edge count does not match header (adjacency entries " + std::to_string(degree_sum_) +
         ", expected " + std::to_string(2 * header_.m) + ")");
  }
  if (symmetry_checksum_ != 0) fail("adjacency is not symmetric (directed input?)");
}

GraphStream GraphStream::reopen() const {
  GraphStream fresh(source_, options_);
  if (!whole_graph_) {
    fresh.lines_ = source_->open_at(body_offset_);
    fresh.body_offset_ = body_offset_;
    fresh.first_id_ = first_id_;
    fresh.end_id_ = end_id_;
    fresh.next_id_ = first_id_;
    fresh.whole_graph_ = false;
  }
  return fresh;
}

std::vector<GraphStream> GraphStream::shards(std::size_t count) const {
  if (count == 0) throw ConfigError("shard count must be positive");
  const NodeId n_range = end_id_ - first_id_;
  std::vector<NodeId> bounds(count + 1);
  for (std::size_t s = 0; s <= count; ++s) bounds[s] = first_id_ + n_range * s / count;

  // Byte offset of each shard's first node line.
  std::vector<std::uint64_t> offsets(count, body_offset_);
  {
    auto scan = source_->open_at(body_offset_);
    NodeId id = first_id_;
    std::size_t shard = 0;
    std::string_view line;
    while (shard < count && bounds[shard] == id) offsets[shard++] = scan->offset();
    while (shard < count) {
      if (!scan->read(line)) break;
      if (detail::is_comment(line)) continue;
      ++id;
      while (shard < count && bounds[shard] == id) offsets[shard++] = scan->offset();
    }
    // Remaining shards (input too short) start at end of input, so reading
    // them reports the missing records.
    for (; shard < count; ++shard) offsets[shard] = scan->offset();
  }

  std::vector<GraphStream> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    GraphStream shard(source_, options_);
    shard.lines_ = source_->open_at(offsets[s]);
    shard.body_offset_ = offsets[s];
    shard.first_id_ = bounds[s];
    shard.end_id_ = bounds[s + 1];
    shard.next_id_ = bounds[s];
    shard.whole_graph_ = false;
    out.push_back(std::move(shard));
  }
  return out;
}

NodeWeight GraphStream::total_node_weight() const {
  if (!header_.node_weights) return static_cast<NodeWeight>(end_id_ - first_id_);
  GraphStream pass = reopen();
  NodeRecord record;
  NodeWeight total = 0;
  while (pass.next(record)) total += record.weight;
  return total;
}

}  // namespace streampart
