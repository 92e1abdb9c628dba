#include "privopt/instances.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <utility>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

namespace privopt {

using nlohmann::json;

ProblemInstance generate_ap_instance(std::uint64_t seed, std::size_t m, std::size_t n, std::size_t n_obj, Weight lo,
                                     Weight hi)
{
    if (lo > hi) throw std::invalid_argument("generate_ap_instance: lo > hi");
    if (n_obj < 1 || n_obj > 2) throw std::invalid_argument("generate_ap_instance: one or two objectives");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Weight> dist(lo, hi);

    ProblemInstance inst;
    inst.kind = n_obj == 1 ? ProblemKind::AP : ProblemKind::MOAP;
    inst.name = fmt::format("{}{}x{}_s{}", n_obj == 1 ? "ap" : "moap", m, n, seed);
    for (std::size_t k = 0; k < n_obj; ++k) {
        std::vector<Weight> entries(m * n);
        for (auto& e : entries) e = dist(rng);
        inst.objectives.emplace_back(m, n, std::move(entries), Direction::Maximize);
    }
    inst.party_partition = single_party(m);
    return inst;
}

Weight euc2d_distance(Point2 a, Point2 b)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return static_cast<Weight>(std::sqrt(dx * dx + dy * dy) + 0.5);
}

ProblemInstance tsp_from_coordinates(std::string name, std::span<const Point2> nodes)
{
    const auto n = nodes.size();
    if (n < 2) throw std::invalid_argument("TSP needs at least two nodes");
    WeightMatrix w(n, n, Direction::Minimize);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            w(i, j) = w(j, i) = euc2d_distance(nodes[i], nodes[j]);
        }
    }
    ProblemInstance inst;
    inst.kind = ProblemKind::TSP;
    inst.name = std::move(name);
    inst.objectives.push_back(std::move(w));
    inst.party_partition = single_party(n);
    return inst;
}

ProblemInstance generate_euclidean_tsp(std::uint64_t seed, std::size_t n, double extent)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(0, static_cast<int>(extent));
    std::vector<Point2> nodes(n);
    for (auto& p : nodes) {
        p.x = coord(rng);
        p.y = coord(rng);
    }
    return tsp_from_coordinates(fmt::format("tsp{}_s{}", n, seed), nodes);
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(fmt::format("line {}: {}", line, what)), line_(line)
{
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_number(std::string_view token, double& out)
{
    // from_chars for double is available in libstdc++ 11
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        const auto start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

} // namespace

ProblemInstance parse_tsplib(std::string_view text)
{
    std::string name;
    std::size_t dimension = 0;
    bool in_coords = false;
    bool saw_eof = false;
    bool saw_type = false;
    bool saw_weight_type = false;
    std::vector<Point2> nodes;
    std::vector<char> filled;
    std::size_t coords_read = 0;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size() && !saw_eof) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const auto line = trim(text.substr(pos, nl - pos));
        pos = nl + 1;
        ++line_no;
        if (line.empty()) {
            if (nl == text.size()) break;
            continue;
        }
        if (line == "EOF") {
            saw_eof = true;
            break;
        }
        if (in_coords) {
            const auto tokens = split_ws(line);
            double id = 0, x = 0, y = 0;
            if (tokens.size() != 3 || !parse_number(tokens[0], id) || !parse_number(tokens[1], x) ||
                !parse_number(tokens[2], y)) {
                throw ParseError(line_no, fmt::format("malformed coordinate line '{}'", line));
            }
            const auto idx = static_cast<std::size_t>(id);
            if (id != static_cast<double>(idx) || idx < 1 || idx > dimension || filled[idx - 1]) {
                throw ParseError(line_no, fmt::format("invalid node id '{}'", tokens[0]));
            }
            nodes[idx - 1] = Point2{x, y};
            filled[idx - 1] = 1;
            ++coords_read;
            if (coords_read == dimension) in_coords = false;
            continue;
        }
        if (line == "NODE_COORD_SECTION") {
            if (!saw_type || !saw_weight_type || dimension == 0) {
                throw ParseError(line_no, "NODE_COORD_SECTION before TYPE, EDGE_WEIGHT_TYPE and DIMENSION");
            }
            in_coords = true;
            nodes.assign(dimension, Point2{});
            filled.assign(dimension, 0);
            continue;
        }
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError(line_no, fmt::format("unexpected line '{}'", line));
        }
        const auto key = trim(line.substr(0, colon));
        const auto value = trim(line.substr(colon + 1));
        if (key == "NAME") {
            name = std::string(value);
        } else if (key == "TYPE") {
            if (value != "TSP") throw ParseError(line_no, fmt::format("unsupported TYPE '{}'", value));
            saw_type = true;
        } else if (key == "EDGE_WEIGHT_TYPE") {
            if (value != "EUC_2D") throw ParseError(line_no, fmt::format("unsupported EDGE_WEIGHT_TYPE '{}'", value));
            saw_weight_type = true;
        } else if (key == "DIMENSION") {
            double d = 0;
            if (!parse_number(value, d) || d < 2 || d != static_cast<double>(static_cast<std::size_t>(d))) {
                throw ParseError(line_no, fmt::format("invalid DIMENSION '{}'", value));
            }
            dimension = static_cast<std::size_t>(d);
        }
        // COMMENT and other header keys are ignored
    }
    if (in_coords) throw ParseError(line_no, fmt::format("expected {} coordinates, read {}", dimension, coords_read));
    if (!saw_eof) throw ParseError(line_no, "missing EOF");
    if (coords_read == 0) throw ParseError(line_no, "missing NODE_COORD_SECTION");

    auto inst = tsp_from_coordinates(name.empty() ? std::string("unnamed") : name, nodes);
    if (auto opt = tsplib_known_optimum(inst.name)) inst.known_optimum = std::vector<double>{*opt};
    return inst;
}

std::optional<double> tsplib_known_optimum(std::string_view name)
{
    static constexpr std::array<std::pair<std::string_view, double>, 24> registry{{
        {"eil51", 426},     {"berlin52", 7542},  {"st70", 675},       {"eil76", 538},
        {"pr76", 108159},   {"rat99", 1211},     {"kroA100", 21282},  {"kroB100", 22141},
        {"kroC100", 20749}, {"kroD100", 21294},  {"kroE100", 22068},  {"rd100", 7910},
        {"eil101", 629},    {"lin105", 14379},   {"pr107", 44303},    {"pr124", 59030},
        {"bier127", 118282}, {"ch130", 6110},    {"pr136", 96772},    {"pr144", 58537},
        {"ch150", 6528},    {"kroA150", 26524},  {"kroB150", 26130},  {"pr152", 73682},
    }};
    for (const auto& [key, value] : registry) {
        if (key == name) return value;
    }
    return std::nullopt;
}

namespace {

json matrix_to_json(const WeightMatrix& w)
{
    return json{{"direction", to_string(w.direction())},
                {"entries", std::vector<Weight>(w.entries().begin(), w.entries().end())}};
}

} // namespace

std::string serialize_instance(const ProblemInstance& instance)
{
    json j;
    j["kind"] = to_string(instance.kind);
    j["name"] = instance.name;
    j["m"] = instance.rows();
    j["n"] = instance.cols();
    j["objectives"] = json::array();
    for (const auto& w : instance.objectives) j["objectives"].push_back(matrix_to_json(w));
    j["party_partition"] = instance.party_partition;
    j["known_optimum"] = instance.known_optimum ? json(*instance.known_optimum) : json(nullptr);
    j["ground_truth"] = instance.ground_truth ? json(instance.ground_truth->points) : json(nullptr);
    return j.dump() + "\n";
}

ProblemInstance deserialize_instance(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(fmt::format("instance document: {}", e.what()));
    }
    try {
        ProblemInstance inst;
        inst.kind = parse_problem_kind(j.at("kind").get<std::string>());
        inst.name = j.at("name").get<std::string>();
        const auto m = j.at("m").get<std::size_t>();
        const auto n = j.at("n").get<std::size_t>();
        for (const auto& o : j.at("objectives")) {
            inst.objectives.emplace_back(m, n, o.at("entries").get<std::vector<Weight>>(),
                                         parse_direction(o.at("direction").get<std::string>()));
        }
        if (j.contains("party_partition") && !j["party_partition"].is_null()) {
            inst.party_partition = j["party_partition"].get<std::vector<std::vector<std::size_t>>>();
        } else {
            inst.party_partition = single_party(m);
        }
        if (j.contains("known_optimum") && !j["known_optimum"].is_null()) {
            inst.known_optimum = j["known_optimum"].get<std::vector<double>>();
        }
        if (j.contains("ground_truth") && !j["ground_truth"].is_null()) {
            GroundTruthSet gt;
            gt.points = j["ground_truth"].get<std::vector<ObjectiveVector>>();
            gt.refresh_bounds();
            inst.ground_truth = std::move(gt);
        }
        inst.validate();
        return inst;
    } catch (const json::exception& e) {
        throw std::invalid_argument(fmt::format("instance document: {}", e.what()));
    }
}

void save_instance(const ProblemInstance& instance, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    out << serialize_instance(instance);
    if (!out) throw std::runtime_error(fmt::format("failed writing '{}'", path.string()));
}

ProblemInstance load_instance(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(fmt::format("cannot read '{}'", path.string()));
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto text = buffer.str();
    if (path.extension() == ".tsp") return parse_tsplib(text);
    return deserialize_instance(text);
}

} // namespace privopt
