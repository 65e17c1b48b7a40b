#include "submark/parsers.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>
#include <unordered_set>

namespace submark {

namespace {

/// Iterates content lines, tracking 1-based line numbers and skipping blank
/// lines and '#'/'%' comments. Handles CRLF endings.
struct LineReader {
    explicit LineReader(std::istream& stream) : in(stream) {}

    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_no;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            const auto first = raw.find_first_not_of(" \t");
            if (first == std::string::npos) continue;
            if (raw[first] == '#' || raw[first] == '%') continue;
            out = raw;
            return true;
        }
        return false;
    }

    std::istream& in;
    int line_no = 0;
};

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t begin = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > begin) tokens.push_back(line.substr(begin, i - begin));
    }
    return tokens;
}

long long parse_int_token(std::string_view token, int line) {
    long long value = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line, "invalid integer '" + std::string(token) + "'");
    }
    return value;
}

double parse_double_token(std::string_view token, int line) {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line, "invalid number '" + std::string(token) + "'");
    }
    return value;
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

int64_t edge_key(int u, int v, int node_count) {
    const int a = std::min(u, v);
    const int b = std::max(u, v);
    return static_cast<int64_t>(a) * node_count + b;
}

struct HeaderCounts {
    int node_count = 0;
    long long edge_count = 0;
};

HeaderCounts parse_graph_header(LineReader& reader) {
    std::string line;
    if (!reader.next(line)) throw ParseError(0, "empty input, expected header");
    const auto tokens = split_tokens(line);
    if (tokens.size() != 2) {
        throw ParseError(reader.line_no,
                         "header must be '<node_count> <edge_count>'");
    }
    HeaderCounts header;
    const long long nodes = parse_int_token(tokens[0], reader.line_no);
    header.edge_count = parse_int_token(tokens[1], reader.line_no);
    if (nodes < 1) throw ParseError(reader.line_no, "node count must be >= 1");
    if (header.edge_count < 0) {
        throw ParseError(reader.line_no, "edge count must be >= 0");
    }
    header.node_count = static_cast<int>(nodes);
    return header;
}

int parse_node_id(std::string_view token, int node_count, int line) {
    const long long id = parse_int_token(token, line);
    if (id < 1 || id > node_count) {
        throw ParseError(line, "node id " + std::to_string(id) +
                                   " out of range [1, " +
                                   std::to_string(node_count) + "]");
    }
    return static_cast<int>(id - 1);
}

UndirectedGraph parse_undirected(std::istream& in, bool weighted,
                                 bool weight_required) {
    LineReader reader(in);
    const HeaderCounts header = parse_graph_header(reader);

    std::vector<UndirectedGraph::Edge> edges;
    edges.reserve(static_cast<std::size_t>(header.edge_count));
    std::unordered_set<int64_t> seen;
    seen.reserve(static_cast<std::size_t>(header.edge_count) * 2);

    std::string line;
    while (reader.next(line)) {
        if (std::ssize(edges) == header.edge_count) {
            throw ParseError(reader.line_no,
                             "more edges than declared (" +
                                 std::to_string(header.edge_count) + ")");
        }
        const auto tokens = split_tokens(line);
        const std::size_t max_tokens = weighted ? 3 : 2;
        const std::size_t min_tokens = weight_required ? 3 : 2;
        if (tokens.size() < min_tokens || tokens.size() > max_tokens) {
            throw ParseError(reader.line_no, "malformed edge line");
        }
        UndirectedGraph::Edge edge;
        edge.u = parse_node_id(tokens[0], header.node_count, reader.line_no);
        edge.v = parse_node_id(tokens[1], header.node_count, reader.line_no);
        if (edge.u == edge.v) {
            throw ParseError(reader.line_no,
                             "self-loop at node " + std::to_string(edge.u + 1));
        }
        edge.weight =
            tokens.size() == 3 ? parse_double_token(tokens[2], reader.line_no) : 1.0;
        if (!seen.insert(edge_key(edge.u, edge.v, header.node_count)).second) {
            throw ParseError(reader.line_no,
                             "duplicate edge (" + std::to_string(edge.u + 1) +
                                 ", " + std::to_string(edge.v + 1) + ")");
        }
        edges.push_back(edge);
    }
    if (std::ssize(edges) != header.edge_count) {
        throw ParseError(reader.line_no,
                         "expected " + std::to_string(header.edge_count) +
                             " edges, found " + std::to_string(edges.size()));
    }
    return make_undirected_graph(header.node_count, std::move(edges));
}

}  // namespace

UndirectedGraph make_undirected_graph(int node_count,
                                      std::vector<UndirectedGraph::Edge> edges) {
    if (node_count < 1) throw std::invalid_argument("node count must be >= 1");
    std::unordered_set<int64_t> seen;
    seen.reserve(edges.size() * 2);
    for (const auto& edge : edges) {
        if (edge.u < 0 || edge.u >= node_count || edge.v < 0 ||
            edge.v >= node_count) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (edge.u == edge.v) throw std::invalid_argument("self-loop");
        if (!seen.insert(edge_key(edge.u, edge.v, node_count)).second) {
            throw std::invalid_argument("duplicate edge");
        }
    }
    UndirectedGraph graph;
    graph.node_count = node_count;
    graph.edges = std::move(edges);
    graph.adjacency.resize(static_cast<std::size_t>(node_count));
    for (const auto& edge : graph.edges) {
        graph.adjacency[edge.u].emplace_back(edge.v, edge.weight);
        graph.adjacency[edge.v].emplace_back(edge.u, edge.weight);
    }
    return graph;
}

DirectedGraph make_directed_graph(int node_count,
                                  std::vector<DirectedGraph::Arc> arcs,
                                  std::vector<std::string>* warnings) {
    if (node_count < 1) throw std::invalid_argument("node count must be >= 1");
    std::unordered_set<int64_t> seen;
    seen.reserve(arcs.size() * 2);
    for (const auto& arc : arcs) {
        if (arc.from < 0 || arc.from >= node_count || arc.to < 0 ||
            arc.to >= node_count) {
            throw std::invalid_argument("arc endpoint out of range");
        }
        if (arc.from == arc.to) throw std::invalid_argument("self-loop");
        if (!(arc.weight > 0.0)) {
            throw std::invalid_argument("arc weight must be positive");
        }
        const int64_t key =
            static_cast<int64_t>(arc.from) * node_count + arc.to;
        if (!seen.insert(key).second) {
            throw std::invalid_argument("duplicate arc");
        }
    }
    DirectedGraph graph;
    graph.node_count = node_count;
    graph.arcs = std::move(arcs);
    graph.out_arcs.resize(static_cast<std::size_t>(node_count));
    graph.in_degree.assign(static_cast<std::size_t>(node_count), 0);
    graph.out_degree.assign(static_cast<std::size_t>(node_count), 0);
    for (std::size_t i = 0; i < graph.arcs.size(); ++i) {
        const auto& arc = graph.arcs[i];
        graph.out_arcs[arc.from].push_back(static_cast<int>(i));
        ++graph.in_degree[arc.to];
        ++graph.out_degree[arc.from];
    }
    for (auto& arc : graph.arcs) {
        arc.probability = arc.weight / graph.in_degree[arc.to];
        if (arc.probability > 1.0) {
            if (warnings) {
                warnings->push_back(
                    "arc (" + std::to_string(arc.from + 1) + ", " +
                    std::to_string(arc.to + 1) + "): probability " +
                    format_double(arc.probability) + " clamped to 1");
            }
            arc.probability = 1.0;
        }
    }
    return graph;
}

UndirectedGraph parse_edge_list(std::istream& in, bool weighted) {
    return parse_undirected(in, weighted, false);
}

UndirectedGraph parse_gset(std::istream& in) {
    return parse_undirected(in, true, true);
}

SnapParseResult parse_snap_weighted(std::istream& in, bool one_indexed) {
    LineReader reader(in);
    struct RawArc {
        int from;
        int to;
        double weight;
        int line;
    };
    std::vector<RawArc> raw;
    const long long offset = one_indexed ? 1 : 0;
    long long max_id = -1;

    std::string line;
    while (reader.next(line)) {
        const auto tokens = split_tokens(line);
        if (tokens.size() != 3) {
            throw ParseError(reader.line_no, "malformed arc line, expected 'u v w'");
        }
        const long long from = parse_int_token(tokens[0], reader.line_no) - offset;
        const long long to = parse_int_token(tokens[1], reader.line_no) - offset;
        if (from < 0 || to < 0) {
            throw ParseError(reader.line_no, "node id below the minimum for this indexing");
        }
        const double weight = parse_double_token(tokens[2], reader.line_no);
        if (!(weight > 0.0)) {
            throw ParseError(reader.line_no, "arc weight must be positive");
        }
        if (from == to) {
            throw ParseError(reader.line_no,
                             "self-loop at node " + std::to_string(from + offset));
        }
        max_id = std::max({max_id, from, to});
        raw.push_back({static_cast<int>(from), static_cast<int>(to), weight,
                       reader.line_no});
    }
    if (raw.empty()) throw ParseError(0, "empty input, expected arc lines");

    const int node_count = static_cast<int>(max_id + 1);
    std::unordered_set<int64_t> seen;
    seen.reserve(raw.size() * 2);
    std::vector<DirectedGraph::Arc> arcs;
    arcs.reserve(raw.size());
    for (const auto& arc : raw) {
        const int64_t key = static_cast<int64_t>(arc.from) * node_count + arc.to;
        if (!seen.insert(key).second) {
            throw ParseError(arc.line, "duplicate arc (" +
                                           std::to_string(arc.from + offset) + ", " +
                                           std::to_string(arc.to + offset) + ")");
        }
        arcs.push_back({arc.from, arc.to, arc.weight, 0.0});
    }

    SnapParseResult result;
    result.graph = make_directed_graph(node_count, std::move(arcs), &result.warnings);
    return result;
}

namespace {

struct TTPHeader {
    std::optional<int> dimension;
    std::optional<int> item_count;
    std::optional<double> capacity;
    std::optional<double> min_speed;
    std::optional<double> max_speed;
    std::optional<double> renting_ratio;
    std::string name;
};

std::string trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t");
    return std::string(text.substr(first, last - first + 1));
}

}  // namespace

TTPInstance parse_ttp(std::istream& in) {
    LineReader reader(in);
    TTPHeader header;

    std::string line;
    bool saw_coords = false;
    bool saw_items = false;
    std::vector<std::pair<double, double>> coords;
    std::vector<TTPItem> items;

    while (reader.next(line)) {
        if (line.rfind("NODE_COORD_SECTION", 0) == 0) {
            if (!header.dimension) {
                throw ParseError(reader.line_no,
                                 "NODE_COORD_SECTION before DIMENSION");
            }
            coords.reserve(static_cast<std::size_t>(*header.dimension));
            for (int i = 0; i < *header.dimension; ++i) {
                if (!reader.next(line)) {
                    throw ParseError(0, "unexpected end of file in NODE_COORD_SECTION");
                }
                const auto tokens = split_tokens(line);
                if (tokens.size() != 3) {
                    throw ParseError(reader.line_no,
                                     "malformed coordinate line, expected 'index x y'");
                }
                const long long index = parse_int_token(tokens[0], reader.line_no);
                if (index != i + 1) {
                    throw ParseError(reader.line_no,
                                     "expected node index " + std::to_string(i + 1));
                }
                coords.emplace_back(parse_double_token(tokens[1], reader.line_no),
                                    parse_double_token(tokens[2], reader.line_no));
            }
            saw_coords = true;
            continue;
        }
        if (line.rfind("ITEMS SECTION", 0) == 0) {
            if (!header.item_count) {
                throw ParseError(reader.line_no,
                                 "ITEMS SECTION before NUMBER OF ITEMS");
            }
            if (!header.dimension) {
                throw ParseError(reader.line_no, "ITEMS SECTION before DIMENSION");
            }
            items.reserve(static_cast<std::size_t>(*header.item_count));
            for (int i = 0; i < *header.item_count; ++i) {
                if (!reader.next(line)) {
                    throw ParseError(0, "unexpected end of file in ITEMS SECTION");
                }
                const auto tokens = split_tokens(line);
                if (tokens.size() != 4) {
                    throw ParseError(
                        reader.line_no,
                        "malformed item line, expected 'index profit weight city'");
                }
                const long long index = parse_int_token(tokens[0], reader.line_no);
                if (index != i + 1) {
                    throw ParseError(reader.line_no,
                                     "expected item index " + std::to_string(i + 1));
                }
                TTPItem item;
                item.profit =
                    static_cast<double>(parse_int_token(tokens[1], reader.line_no));
                item.weight =
                    static_cast<double>(parse_int_token(tokens[2], reader.line_no));
                const long long city = parse_int_token(tokens[3], reader.line_no);
                if (city < 1 || city > *header.dimension) {
                    throw ParseError(reader.line_no,
                                     "item city " + std::to_string(city) +
                                         " out of range [1, " +
                                         std::to_string(*header.dimension) + "]");
                }
                if (!(item.profit > 0.0)) {
                    throw ParseError(reader.line_no, "item profit must be positive");
                }
                if (!(item.weight > 0.0)) {
                    throw ParseError(reader.line_no, "item weight must be positive");
                }
                item.city = static_cast<int>(city - 1);
                items.push_back(item);
            }
            saw_items = true;
            continue;
        }

        const auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw ParseError(reader.line_no, "unrecognized line outside any section");
        }
        const std::string key = trim(line.substr(0, colon));
        const std::string value = trim(line.substr(colon + 1));
        const int line_no = reader.line_no;
        if (key == "PROBLEM NAME") {
            header.name = value;
        } else if (key == "DIMENSION") {
            header.dimension =
                static_cast<int>(parse_int_token(value, line_no));
        } else if (key == "NUMBER OF ITEMS") {
            header.item_count =
                static_cast<int>(parse_int_token(value, line_no));
        } else if (key == "CAPACITY OF KNAPSACK") {
            header.capacity = parse_double_token(value, line_no);
        } else if (key == "MIN SPEED") {
            header.min_speed = parse_double_token(value, line_no);
        } else if (key == "MAX SPEED") {
            header.max_speed = parse_double_token(value, line_no);
        } else if (key == "RENTING RATIO") {
            header.renting_ratio = parse_double_token(value, line_no);
        }
        // other header keys (knapsack type, edge weight type, ...) are ignored
    }

    if (!header.dimension) throw ParseError(0, "missing DIMENSION header");
    if (!header.item_count) throw ParseError(0, "missing NUMBER OF ITEMS header");
    if (!header.capacity) throw ParseError(0, "missing CAPACITY OF KNAPSACK header");
    if (!header.min_speed) throw ParseError(0, "missing MIN SPEED header");
    if (!header.max_speed) throw ParseError(0, "missing MAX SPEED header");
    if (!header.renting_ratio) throw ParseError(0, "missing RENTING RATIO header");
    if (!saw_coords) throw ParseError(0, "missing NODE_COORD_SECTION");
    if (!saw_items) throw ParseError(0, "missing ITEMS SECTION");

    if (*header.dimension < 2) throw ParseError(0, "DIMENSION must be >= 2");
    if (*header.item_count < 1) {
        throw ParseError(0, "instance must contain at least one item");
    }
    if (!(*header.capacity > 0.0)) throw ParseError(0, "capacity must be positive");
    if (!(*header.min_speed > 0.0) || !(*header.min_speed < *header.max_speed)) {
        throw ParseError(0, "speeds must satisfy 0 < MIN SPEED < MAX SPEED");
    }
    if (*header.renting_ratio < 0.0) {
        throw ParseError(0, "RENTING RATIO must be non-negative");
    }

    TTPInstance instance;
    instance.city_count = *header.dimension;
    instance.capacity = *header.capacity;
    instance.min_speed = *header.min_speed;
    instance.max_speed = *header.max_speed;
    instance.renting_ratio = *header.renting_ratio;
    instance.name = header.name;

    const int n = instance.city_count;
    instance.leg_distance.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& [x1, y1] = coords[static_cast<std::size_t>(i)];
        const auto& [x2, y2] = coords[static_cast<std::size_t>((i + 1) % n)];
        const double distance = std::ceil(std::hypot(x2 - x1, y2 - y1));
        if (!(distance > 0.0)) {
            throw ParseError(0, "zero-length leg between cities " +
                                    std::to_string(i + 1) + " and " +
                                    std::to_string((i + 1) % n + 1));
        }
        instance.leg_distance[static_cast<std::size_t>(i)] = distance;
    }

    std::stable_sort(items.begin(), items.end(),
                     [](const TTPItem& a, const TTPItem& b) { return a.city < b.city; });
    instance.items = std::move(items);
    instance.city_items.assign(static_cast<std::size_t>(n), {0, 0});
    int cursor = 0;
    for (int city = 0; city < n; ++city) {
        const int first = cursor;
        while (cursor < instance.item_count() &&
               instance.items[static_cast<std::size_t>(cursor)].city == city) {
            ++cursor;
        }
        instance.city_items[static_cast<std::size_t>(city)] = {first, cursor};
    }
    return instance;
}

void write_edge_list(const UndirectedGraph& graph, std::ostream& out, bool weighted) {
    out << graph.node_count << ' ' << graph.edges.size() << '\n';
    for (const auto& edge : graph.edges) {
        out << edge.u + 1 << ' ' << edge.v + 1;
        if (weighted) out << ' ' << format_double(edge.weight);
        out << '\n';
    }
}

void write_gset(const UndirectedGraph& graph, std::ostream& out) {
    out << graph.node_count << ' ' << graph.edges.size() << '\n';
    for (const auto& edge : graph.edges) {
        out << edge.u + 1 << ' ' << edge.v + 1 << ' '
            << static_cast<long long>(edge.weight) << '\n';
    }
}

void write_snap_weighted(const DirectedGraph& graph, std::ostream& out,
                         bool one_indexed) {
    const int offset = one_indexed ? 1 : 0;
    for (const auto& arc : graph.arcs) {
        out << arc.from + offset << ' ' << arc.to + offset << ' '
            << format_double(arc.weight) << '\n';
    }
}

namespace {

std::ifstream open_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    return in;
}

template <typename Parse>
auto parse_file(const std::string& path, Parse parse) {
    auto in = open_file(path);
    try {
        return parse(in);
    } catch (const ParseError& error) {
        // what() already carries the line prefix; only the path is added.
        throw ParseError(0, path + ": " + error.what());
    }
}

}  // namespace

UndirectedGraph load_edge_list(const std::string& path, bool weighted) {
    return parse_file(path, [&](std::istream& in) { return parse_edge_list(in, weighted); });
}

UndirectedGraph load_gset(const std::string& path) {
    return parse_file(path, [](std::istream& in) { return parse_gset(in); });
}

SnapParseResult load_snap_weighted(const std::string& path, bool one_indexed) {
    return parse_file(path,
                      [&](std::istream& in) { return parse_snap_weighted(in, one_indexed); });
}

TTPInstance load_ttp(const std::string& path) {
    return parse_file(path, [](std::istream& in) { return parse_ttp(in); });
}

}  // namespace submark
