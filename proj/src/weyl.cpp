#include "anosovkit/weyl.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>

#include "anosovkit/errors.hpp"

namespace anosovkit {

std::uint64_t weyl_group_order(const SimpleType& t) {
    auto factorial = [](int n) {
        std::uint64_t f = 1;
        for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
        return f;
    };
    const int n = t.rank;
    switch (t.family) {
        case Family::A: return factorial(n + 1);
        case Family::B:
        case Family::C: return (std::uint64_t{1} << n) * factorial(n);
        case Family::D: return (std::uint64_t{1} << (n - 1)) * factorial(n);
        case Family::E: return n == 6 ? 51840ull : n == 7 ? 2903040ull : 696729600ull;
        case Family::F: return 1152;
        case Family::G: return 12;
    }
    return 0;
}

Bitset WeylGroup::inversion_set(ElementId x) const {
    Bitset inv(static_cast<std::size_t>(rs_.num_positive()));
    for (int k = 0; k < rs_.num_positive(); ++k)
        if (!rs_.is_positive(act(x, k))) inv.set(static_cast<std::size_t>(k));
    return inv;
}

std::optional<ElementId> WeylGroup::lookup(const std::vector<std::uint16_t>& perm) const {
    Bitset inv(static_cast<std::size_t>(rs_.num_positive()));
    for (int k = 0; k < rs_.num_positive(); ++k)
        if (!rs_.is_positive(perm[static_cast<std::size_t>(k)])) inv.set(static_cast<std::size_t>(k));
    auto it = index_.find(inv);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

ElementId WeylGroup::multiply(ElementId x, ElementId y) const {
    const auto r = static_cast<std::size_t>(rs_.num_roots());
    std::vector<std::uint16_t> p(r);
    for (std::size_t k = 0; k < r; ++k) p[k] = static_cast<std::uint16_t>(act(x, act(y, static_cast<int>(k))));
    return *lookup(p);
}

ElementId WeylGroup::inverse(ElementId x) const {
    const auto r = static_cast<std::size_t>(rs_.num_roots());
    std::vector<std::uint16_t> p(r);
    for (std::size_t k = 0; k < r; ++k) p[static_cast<std::size_t>(act(x, static_cast<int>(k)))] = static_cast<std::uint16_t>(k);
    return *lookup(p);
}

ElementId WeylGroup::from_word(const std::vector<int>& word) const {
    ElementId x = identity();
    for (int i : word) {
        if (i < 0 || i >= rank()) throw ValidationError("generator index " + std::to_string(i + 1) + " out of range");
        x = right_multiply(x, i);
    }
    return x;
}

std::vector<int> WeylGroup::reduced_word(ElementId x) const {
    std::vector<int> rev;
    while (x != identity()) {
        for (int i = 0; i < rank(); ++i)
            if (is_right_descent(x, i)) {
                rev.push_back(i);
                x = right_multiply(x, i);
                break;
            }
    }
    return {rev.rbegin(), rev.rend()};
}

std::string WeylGroup::name(ElementId x) const {
    if (x == identity()) return "e";
    std::string out;
    for (int i : reduced_word(x)) out += "s" + std::to_string(i + 1);
    return out;
}

void WeylGroup::build_index() {
    index_.clear();
    index_.reserve(size());
    for (ElementId x = 0; x < size(); ++x) index_.emplace(inversion_set(x), x);
}

WeylGroup generate_weyl_group(const RootSystem& rs, std::uint64_t max_order) {
    const std::uint64_t expected = weyl_group_order(rs.type());
    if (expected > max_order)
        throw ResourceLimitError("W(" + rs.type().name() + ") has order " + std::to_string(expected) +
                                 " which exceeds max_order " + std::to_string(max_order));

    WeylGroup w(rs);
    const auto nroots = static_cast<std::size_t>(rs.num_roots());
    const auto npos = static_cast<std::size_t>(rs.num_positive());
    const int rank = rs.rank();
    w.perm_.reserve(expected * nroots);
    w.length_.reserve(expected);

    auto key_of = [&](const std::uint16_t* p) {
        Bitset inv(npos);
        for (std::size_t k = 0; k < npos; ++k)
            if (!rs.is_positive(p[k])) inv.set(k);
        return inv;
    };

    // Breadth-first closure under right multiplication: (w s)(b) = w(s(b)).
    for (std::size_t k = 0; k < nroots; ++k) w.perm_.push_back(static_cast<std::uint16_t>(k));
    w.length_.push_back(0);
    w.index_.emplace(key_of(w.perm_.data()), 0);
    w.right_.assign(static_cast<std::size_t>(rank), {});
    std::vector<std::uint16_t> scratch(nroots);
    for (std::size_t x = 0; x < w.length_.size(); ++x) {
        for (int i = 0; i < rank; ++i) {
            const auto& s = rs.simple_reflection(i);
            const std::uint16_t* px = w.perm_.data() + x * nroots;
            for (std::size_t k = 0; k < nroots; ++k) scratch[k] = px[s[k]];
            Bitset key = key_of(scratch.data());
            auto [it, inserted] = w.index_.emplace(std::move(key), static_cast<ElementId>(w.length_.size()));
            if (inserted) {
                w.perm_.insert(w.perm_.end(), scratch.begin(), scratch.end());
                w.length_.push_back(static_cast<int>(it->first.count()));
                if (w.length_.size() > expected)
                    throw ResourceLimitError("closure exceeded the expected order of W(" + rs.type().name() + ")");
            }
            auto& row = w.right_[static_cast<std::size_t>(i)];
            if (row.size() <= x) row.resize(x + 1);
            row[x] = it->second;
        }
    }
    const std::size_t n = w.length_.size();

    // Left multiplication: (s w)(b) = s(w(b)).
    w.left_.assign(static_cast<std::size_t>(rank), std::vector<ElementId>(n));
    for (int i = 0; i < rank; ++i) {
        const auto& s = rs.simple_reflection(i);
        for (std::size_t x = 0; x < n; ++x) {
            const std::uint16_t* px = w.perm_.data() + x * nroots;
            for (std::size_t k = 0; k < nroots; ++k) scratch[k] = s[px[k]];
            w.left_[static_cast<std::size_t>(i)][x] = *w.lookup(scratch);
        }
    }

    w.left_w0_.resize(n);
    for (std::size_t x = 0; x < n; ++x) w.left_w0_[x] = w.multiply(w.w0(), static_cast<ElementId>(x));

    // Covers: x = y t_beta with l(x) = l(y) - 1; only beta with y(beta) < 0 can drop length.
    std::vector<std::vector<std::uint16_t>> refl;
    refl.reserve(npos);
    for (std::size_t b = 0; b < npos; ++b) refl.push_back(rs.reflection(static_cast<int>(b)));
    w.covers_.assign(n, {});
    for (std::size_t y = 0; y < n; ++y) {
        const std::uint16_t* py = w.perm_.data() + y * nroots;
        for (std::size_t b = 0; b < npos; ++b) {
            if (rs.is_positive(py[b])) continue;
            for (std::size_t k = 0; k < nroots; ++k) scratch[k] = py[refl[b][k]];
            ElementId x = *w.lookup(scratch);
            if (w.length_[x] == w.length_[y] - 1) w.covers_[y].push_back(x);
        }
        std::sort(w.covers_[y].begin(), w.covers_[y].end());
    }

    // Bruhat closure in id (= length) order.
    w.below_.assign(n, Bitset(n));
    for (std::size_t y = 0; y < n; ++y) {
        w.below_[y].set(y);
        for (ElementId x : w.covers_[y]) w.below_[y] |= w.below_[x];
    }
    return w;
}

bool bruhat_leq(const WeylGroup& w, ElementId x, ElementId y) { return w.bruhat_leq(x, y); }
ElementId left_multiply_w0(const WeylGroup& w, ElementId x) { return w.left_multiply_w0(x); }
std::vector<ElementId> covers(const WeylGroup& w, ElementId y) { return w.covers(y); }

// ---------------------------------------------------------------------------
// Binary image

namespace {

constexpr char kMagic[4] = {'A', 'K', 'W', 'G'};

class Writer {
public:
    template <class T>
    void pod(T v) {
        char buf[sizeof(T)];
        std::memcpy(buf, &v, sizeof(T));
        out_.append(buf, sizeof(T));
    }
    template <class T>
    void array(const std::vector<T>& v) {
        pod<std::uint64_t>(v.size());
        out_.append(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(T));
    }
    void bytes(const char* p, std::size_t n) { out_.append(p, n); }
    std::string take() { return std::move(out_); }

private:
    std::string out_;
};

class Reader {
public:
    explicit Reader(const std::string& in) : in_(in) {}
    template <class T>
    T pod() {
        need(sizeof(T));
        T v;
        std::memcpy(&v, in_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return v;
    }
    template <class T>
    std::vector<T> array() {
        auto n = pod<std::uint64_t>();
        need(n * sizeof(T));
        std::vector<T> v(n);
        std::memcpy(v.data(), in_.data() + pos_, n * sizeof(T));
        pos_ += n * sizeof(T);
        return v;
    }
    std::string bytes(std::size_t n) {
        need(n);
        std::string s = in_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    bool done() const { return pos_ == in_.size(); }

private:
    void need(std::size_t n) const {
        if (pos_ + n > in_.size()) throw ParseError("truncated Weyl group image");
    }
    const std::string& in_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string WeylGroup::serialize() const {
    Writer wr;
    wr.bytes(kMagic, 4);
    wr.pod<std::uint32_t>(kFormatVersion);
    const std::string tn = rs_.type().name();
    wr.pod<std::uint32_t>(static_cast<std::uint32_t>(tn.size()));
    wr.bytes(tn.data(), tn.size());
    wr.array(perm_);
    wr.array(length_);
    for (const auto& r : right_) wr.array(r);
    for (const auto& l : left_) wr.array(l);
    wr.array(left_w0_);
    for (const auto& c : covers_) wr.array(c);
    for (const auto& b : below_) wr.array(b.words());
    return wr.take();
}

WeylGroup WeylGroup::deserialize(const std::string& bytes) {
    Reader rd(bytes);
    if (rd.bytes(4) != std::string(kMagic, 4)) throw ParseError("not a Weyl group image");
    if (auto v = rd.pod<std::uint32_t>(); v != kFormatVersion)
        throw ParseError("unsupported Weyl group image version " + std::to_string(v));
    auto tlen = rd.pod<std::uint32_t>();
    SimpleType t = parse_simple_type(rd.bytes(tlen));
    WeylGroup w{RootSystem(t)};
    w.perm_ = rd.array<std::uint16_t>();
    w.length_ = rd.array<int>();
    const std::size_t n = w.length_.size();
    if (w.perm_.size() != n * static_cast<std::size_t>(w.rs_.num_roots())) throw ParseError("inconsistent Weyl group image");
    for (int i = 0; i < w.rank(); ++i) w.right_.push_back(rd.array<ElementId>());
    for (int i = 0; i < w.rank(); ++i) w.left_.push_back(rd.array<ElementId>());
    w.left_w0_ = rd.array<ElementId>();
    w.covers_.resize(n);
    for (std::size_t y = 0; y < n; ++y) w.covers_[y] = rd.array<ElementId>();
    w.below_.assign(n, Bitset(n));
    for (std::size_t y = 0; y < n; ++y) {
        auto words = rd.array<Bitset::Word>();
        if (words.size() != w.below_[y].word_count()) throw ParseError("inconsistent Bruhat block in Weyl group image");
        w.below_[y].words() = std::move(words);
    }
    if (!rd.done()) throw ParseError("trailing bytes in Weyl group image");
    w.build_index();
    return w;
}

// ---------------------------------------------------------------------------
// Cache

std::filesystem::path WeylCache::default_directory() {
    if (const char* d = std::getenv("ANOSOVKIT_CACHE_DIR"); d && *d) return d;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "anosovkit";
    if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "anosovkit";
    return std::filesystem::temp_directory_path() / "anosovkit-cache";
}

std::filesystem::path WeylCache::path_for(const SimpleType& t) const {
    return dir_ / ("weyl-" + t.name() + "-v" + std::to_string(WeylGroup::kFormatVersion) + ".bin");
}

std::optional<WeylGroup> WeylCache::load(const SimpleType& t) const {
    std::ifstream in(path_for(t), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        WeylGroup w = WeylGroup::deserialize(ss.str());
        if (w.root_system().type() != t) return std::nullopt;
        return w;
    } catch (const ParseError&) {
        return std::nullopt;
    }
}

void WeylCache::store(const WeylGroup& w) const {
    std::filesystem::create_directories(dir_);
    const auto target = path_for(w.root_system().type());
    auto tmp = target;
    tmp += ".tmp" + std::to_string(std::random_device{}());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write cache file " + tmp.string());
        const std::string bytes = w.serialize();
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
    std::filesystem::rename(tmp, target);
}

WeylGroup WeylCache::get(const SimpleType& t, std::uint64_t max_order) const {
    if (weyl_group_order(t) > max_order)
        throw ResourceLimitError("W(" + t.name() + ") has order " + std::to_string(weyl_group_order(t)) +
                                 " which exceeds max_order " + std::to_string(max_order));
    if (auto hit = load(t)) return std::move(*hit);
    WeylGroup w = generate_weyl_group(RootSystem(t), max_order);
    try {
        store(w);
    } catch (const std::exception&) {
    }
    return w;
}

std::vector<std::filesystem::path> WeylCache::entries() const {
    std::vector<std::filesystem::path> out;
    if (!std::filesystem::exists(dir_)) return out;
    for (const auto& e : std::filesystem::directory_iterator(dir_)) {
        auto fn = e.path().filename().string();
        if (fn.rfind("weyl-", 0) == 0 && e.path().extension() == ".bin") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t WeylCache::clear() const {
    std::size_t removed = 0;
    for (const auto& p : entries()) removed += std::filesystem::remove(p) ? 1 : 0;
    return removed;
}

}  // namespace anosovkit
