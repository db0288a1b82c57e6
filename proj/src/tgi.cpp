#include "minreach/tgi.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace minreach::tgi {

std::string_view kind_name(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::Delete:
            return "delete";
        case ProblemKind::Delay:
            return "delay";
        case ProblemKind::Slow:
            return "slow";
        case ProblemKind::WForest:
            return "wforest";
    }
    return "?";
}

ProblemKind kind_of(const AnyInstance& inst) {
    return static_cast<ProblemKind>(inst.index());
}

const TemporalGraph& graph_of(const AnyInstance& inst) {
    return std::visit([](const auto& i) -> const TemporalGraph& { return i.g; }, inst);
}

const SourceSet& sources_of(const AnyInstance& inst) {
    return std::visit([](const auto& i) -> const SourceSet& { return i.s; }, inst);
}

namespace {

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : line) {
        if (c == '#') break;
        if (c == ' ' || c == '\t' || c == '\r') {
            if (!cur.empty()) tokens.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

std::int64_t parse_int(const std::string& tok, int line, const char* what) {
    try {
        std::size_t used = 0;
        std::int64_t value = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("trailing junk");
        return value;
    } catch (const std::exception&) {
        throw ParseError(line, std::string("expected an integer for ") + what + ", got '" + tok + "'");
    }
}

struct RawInstance {
    bool have_header = false;
    bool have_n = false;
    VertexId n = 0;
    Time tau = 0;
    std::string problem;
    int problem_line = 0;
    bool have_k = false;
    std::int64_t k = 0;
    std::uint64_t r = 0;
    bool have_delta = false;
    Time delta = 0;
    std::vector<VertexId> sources;
    bool have_sources = false;
    std::map<VertexId, Weight> weights;
    std::vector<TimeEdge> edges;
    std::vector<TimeEdgeKey> undelayable;
    std::set<TimeEdgeKey> seen_keys;
};

}  // namespace

AnyInstance parse_instance(std::string_view text) {
    RawInstance raw;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        std::vector<std::string> tok = tokenize(line);
        if (tok.empty()) continue;

        if (!raw.have_header) {
            if (tok.size() != 2 || tok[0] != "tgi" || tok[1] != "1")
                throw ParseError(line_no, "expected the header 'tgi 1'");
            raw.have_header = true;
            continue;
        }
        const std::string& head = tok[0];
        if (head == "n") {
            if (tok.size() != 4 || tok[2] != "tau")
                throw ParseError(line_no, "expected 'n <int> tau <int>'");
            if (raw.have_n) throw ParseError(line_no, "duplicate 'n' line");
            raw.n = static_cast<VertexId>(parse_int(tok[1], line_no, "n"));
            raw.tau = parse_int(tok[3], line_no, "tau");
            if (raw.n < 1) throw ParseError(line_no, "vertex count must be >= 1");
            if (raw.tau < 1) throw ParseError(line_no, "tau must be >= 1");
            raw.have_n = true;
        } else if (head == "problem") {
            if (tok.size() != 2) throw ParseError(line_no, "expected 'problem <kind>'");
            if (!raw.problem.empty()) throw ParseError(line_no, "duplicate 'problem' line");
            if (tok[1] != "delete" && tok[1] != "delay" && tok[1] != "slow" && tok[1] != "wforest")
                throw ParseError(line_no, "unknown problem kind '" + tok[1] + "'");
            raw.problem = tok[1];
            raw.problem_line = line_no;
        } else if (head == "k") {
            if (tok.size() != 4 && tok.size() != 6)
                throw ParseError(line_no, "expected 'k <int> r <int> [delta <int>]'");
            if (tok[2] != "r") throw ParseError(line_no, "expected 'r' after the budget");
            if (raw.have_k) throw ParseError(line_no, "duplicate 'k' line");
            raw.k = parse_int(tok[1], line_no, "k");
            std::int64_t r = parse_int(tok[3], line_no, "r");
            if (raw.k < 0) throw ParseError(line_no, "budget k must be >= 0");
            if (r < 0) throw ParseError(line_no, "bound r must be >= 0");
            raw.r = static_cast<std::uint64_t>(r);
            raw.have_k = true;
            if (tok.size() == 6) {
                if (tok[4] != "delta") throw ParseError(line_no, "expected 'delta <int>'");
                if (raw.have_delta) throw ParseError(line_no, "duplicate delta");
                raw.delta = parse_int(tok[5], line_no, "delta");
                raw.have_delta = true;
            }
        } else if (head == "delta") {
            if (tok.size() != 2) throw ParseError(line_no, "expected 'delta <int>'");
            if (raw.have_delta) throw ParseError(line_no, "duplicate delta");
            raw.delta = parse_int(tok[1], line_no, "delta");
            raw.have_delta = true;
        } else if (head == "sources") {
            if (tok.size() < 2) throw ParseError(line_no, "sources line needs at least one id");
            if (raw.have_sources) throw ParseError(line_no, "duplicate 'sources' line");
            std::set<VertexId> seen;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                VertexId v = static_cast<VertexId>(parse_int(tok[i], line_no, "source id"));
                if (!seen.insert(v).second)
                    throw ParseError(line_no, "duplicate source " + std::to_string(v));
                raw.sources.push_back(v);
            }
            raw.have_sources = true;
        } else if (head == "weight") {
            if (tok.size() != 3) throw ParseError(line_no, "expected 'weight <id> <value|inf>'");
            if (raw.problem != "wforest")
                throw ParseError(line_no, "weight lines are only valid for problem wforest");
            VertexId v = static_cast<VertexId>(parse_int(tok[1], line_no, "weight id"));
            Weight w;
            if (tok[2] == "inf") {
                w = kInfiniteWeight;
            } else {
                std::int64_t raw_w = parse_int(tok[2], line_no, "weight");
                if (raw_w < 0) throw ParseError(line_no, "weights must be >= 0");
                w = static_cast<Weight>(raw_w);
            }
            if (raw.weights.contains(v))
                throw ParseError(line_no, "duplicate weight for vertex " + std::to_string(v));
            raw.weights[v] = w;
        } else if (head == "e") {
            if (tok.size() < 4 || tok.size() > 6)
                throw ParseError(line_no, "expected 'e <u> <v> <t> [g=<gamma>] [!]'");
            if (!raw.have_n) throw ParseError(line_no, "edge line before the 'n' line");
            VertexId u = static_cast<VertexId>(parse_int(tok[1], line_no, "u"));
            VertexId v = static_cast<VertexId>(parse_int(tok[2], line_no, "v"));
            Time t = parse_int(tok[3], line_no, "t");
            Time gamma = 1;
            bool undelayable = false;
            for (std::size_t i = 4; i < tok.size(); ++i) {
                if (tok[i] == "!") {
                    if (undelayable) throw ParseError(line_no, "duplicate '!' marker");
                    undelayable = true;
                } else if (tok[i].starts_with("g=")) {
                    gamma = parse_int(tok[i].substr(2), line_no, "gamma");
                } else {
                    throw ParseError(line_no, "unknown edge annotation '" + tok[i] + "'");
                }
            }
            if (u == v) throw ParseError(line_no, "loop edges are not allowed");
            if (u < 0 || v < 0 || u >= raw.n || v >= raw.n)
                throw ParseError(line_no, "edge endpoint out of range");
            if (t < 1) throw ParseError(line_no, "time labels start at 1");
            if (t > raw.tau) throw ParseError(line_no, "edge time exceeds the declared tau");
            if (gamma < 0) throw ParseError(line_no, "gamma must be >= 0");
            if (undelayable && raw.problem != "wforest")
                throw ParseError(line_no, "'!' markers are only valid for problem wforest");
            TimeEdge e = make_time_edge(u, v, t, gamma);
            if (!raw.seen_keys.insert(e.key()).second)
                throw ParseError(line_no, "duplicate time-edge (" + std::to_string(e.u) + "," +
                                              std::to_string(e.v) + "," + std::to_string(e.t) + ")");
            raw.edges.push_back(e);
            if (undelayable) raw.undelayable.push_back(e.key());
        } else {
            throw ParseError(line_no, "unknown directive '" + head + "'");
        }
    }

    if (!raw.have_header) throw ParseError(0, "empty input; expected the header 'tgi 1'");
    if (!raw.have_n) throw ParseError(0, "missing 'n ... tau ...' line");
    if (raw.problem.empty()) throw ParseError(0, "missing 'problem' line");
    if (!raw.have_k) throw ParseError(0, "missing 'k ... r ...' line");
    if (!raw.have_sources) throw ParseError(0, "missing 'sources' line");
    const bool needs_delta = raw.problem != "delete";
    if (needs_delta && !raw.have_delta)
        throw ParseError(0, "problem " + raw.problem + " requires a delta");
    if (!needs_delta && raw.have_delta)
        throw ParseError(0, "problem delete takes no delta");
    if (needs_delta && raw.delta < 1) throw ParseError(0, "delta must be >= 1");
    if (!raw.weights.empty())
        for (const auto& [v, w] : raw.weights) {
            (void)w;
            if (v < 0 || v >= raw.n) throw ParseError(0, "weight vertex out of range");
        }

    try {
        TemporalGraph g(raw.n, raw.edges);
        SourceSet s = SourceSet::of(raw.sources, raw.n);
        if (raw.problem == "delete") {
            DeleteInstance inst{std::move(g), std::move(s), static_cast<int>(raw.k), raw.r};
            inst.validate();
            return inst;
        }
        if (raw.problem == "delay") {
            DelayInstance inst{std::move(g), std::move(s), static_cast<int>(raw.k), raw.r, raw.delta};
            inst.validate();
            return inst;
        }
        if (raw.problem == "slow") {
            SlowInstance inst{std::move(g), std::move(s), static_cast<int>(raw.k), raw.r, raw.delta};
            inst.validate();
            return inst;
        }
        WeightFn w = WeightFn::uniform(raw.n, 1);
        for (const auto& [v, wt] : raw.weights) w.at(v) = wt;
        std::sort(raw.undelayable.begin(), raw.undelayable.end());
        WeightedForestDelayInstance inst{std::move(g),
                                         std::move(w),
                                         std::move(raw.undelayable),
                                         std::move(s),
                                         static_cast<int>(raw.k),
                                         static_cast<Weight>(raw.r),
                                         raw.delta};
        inst.validate();
        return inst;
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
}

namespace {

void serialize_common(std::ostringstream& out, ProblemKind kind, const TemporalGraph& g,
                      const SourceSet& s, std::int64_t k, std::uint64_t r,
                      std::optional<Time> delta, const WeightFn* w,
                      const std::vector<TimeEdgeKey>* undelayable) {
    out << "tgi 1\n";
    out << "n " << g.vertex_count() << " tau " << g.lifetime() << "\n";
    out << "problem " << kind_name(kind) << "\n";
    out << "k " << k << " r " << r;
    if (delta) out << " delta " << *delta;
    out << "\n";
    out << "sources";
    for (VertexId v : s.ids) out << ' ' << v;
    out << "\n";
    if (w)
        for (VertexId v = 0; v < w->size(); ++v) {
            if (w->at(v) == 1) continue;
            out << "weight " << v << ' ';
            if (w->at(v) == kInfiniteWeight)
                out << "inf";
            else
                out << w->at(v);
            out << "\n";
        }
    for (const TimeEdge& e : g.edges()) {
        out << "e " << e.u << ' ' << e.v << ' ' << e.t;
        if (e.gamma != 1) out << " g=" << e.gamma;
        if (undelayable && std::binary_search(undelayable->begin(), undelayable->end(), e.key()))
            out << " !";
        out << "\n";
    }
}

}  // namespace

std::string serialize_instance(const AnyInstance& inst) {
    std::ostringstream out;
    switch (kind_of(inst)) {
        case ProblemKind::Delete: {
            const auto& i = std::get<DeleteInstance>(inst);
            serialize_common(out, ProblemKind::Delete, i.g, i.s, i.k, i.r, std::nullopt, nullptr,
                             nullptr);
            break;
        }
        case ProblemKind::Delay: {
            const auto& i = std::get<DelayInstance>(inst);
            serialize_common(out, ProblemKind::Delay, i.g, i.s, i.k, i.r, i.delta, nullptr, nullptr);
            break;
        }
        case ProblemKind::Slow: {
            const auto& i = std::get<SlowInstance>(inst);
            serialize_common(out, ProblemKind::Slow, i.g, i.s, i.k, i.r, i.delta, nullptr, nullptr);
            break;
        }
        case ProblemKind::WForest: {
            const auto& i = std::get<WeightedForestDelayInstance>(inst);
            serialize_common(out, ProblemKind::WForest, i.g, i.s, i.k,
                             static_cast<std::uint64_t>(i.r), i.delta, &i.w, &i.f);
            break;
        }
    }
    return out.str();
}

std::string digest(const AnyInstance& inst) {
    std::string text = serialize_instance(inst);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace minreach::tgi
