#include "sndg/instance_io.hpp"

#include "sndg/errors.hpp"

#include <cstdint>
#include <sstream>
#include <vector>

namespace sndg {

namespace {

struct Token {
    std::string text;
    int column = 0;  // 1-based
};

std::vector<Token> split_tokens(const std::string& line) {
    std::vector<Token> tokens;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return tokens;
}

int parse_int(const Token& token, int line_no, const char* what) {
    try {
        size_t pos = 0;
        int value = std::stoi(token.text, &pos);
        if (pos != token.text.size()) throw std::invalid_argument("trailing");
        return value;
    } catch (const std::exception&) {
        throw ParseError(line_no, token.column, std::string("invalid ") + what + " '" +
                                                    token.text + "'");
    }
}

Rational parse_rat(const Token& token, int line_no, const char* what) {
    Rational value;
    if (!try_parse_rational(token.text, value))
        throw ParseError(line_no, token.column,
                         std::string("invalid ") + what + " '" + token.text + "'");
    return value;
}

}  // namespace

Instance parse_instance(std::string_view text) {
    Instance instance;
    bool saw_directed = false, saw_vertices = false, saw_name = false, saw_note = false;
    bool saw_record = false;
    int line_no = 0;

    std::istringstream stream{std::string(text)};
    std::string line;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<Token> tokens = split_tokens(line);
        if (tokens.empty() || tokens[0].text[0] == '#') continue;

        const std::string& head = tokens[0].text;
        auto require_header_position = [&](const char* name, bool& seen) {
            if (seen) throw ParseError(line_no, tokens[0].column,
                                       std::string("duplicate '") + name + "' header");
            if (saw_record)
                throw ParseError(line_no, tokens[0].column,
                                 std::string("'") + name + "' header after records");
            seen = true;
        };

        if (head == "name:" || head == "note:") {
            require_header_position(head == "name:" ? "name:" : "note:",
                                    head == "name:" ? saw_name : saw_note);
            std::string value;
            size_t at = line.find(head) + head.size();
            while (at < line.size() && (line[at] == ' ' || line[at] == '\t')) ++at;
            value = line.substr(at);
            while (!value.empty() && (value.back() == ' ' || value.back() == '\t'))
                value.pop_back();
            (head == "name:" ? instance.name : instance.note) = value;
        } else if (head == "directed:") {
            require_header_position("directed:", saw_directed);
            if (tokens.size() != 2 || (tokens[1].text != "true" && tokens[1].text != "false"))
                throw ParseError(line_no, tokens.size() > 1 ? tokens[1].column : tokens[0].column,
                                 "expected 'true' or 'false'");
            instance.game.directed = tokens[1].text == "true";
        } else if (head == "vertices:") {
            require_header_position("vertices:", saw_vertices);
            if (tokens.size() != 2)
                throw ParseError(line_no, tokens[0].column, "expected one vertex count");
            instance.game.vertex_count = parse_int(tokens[1], line_no, "vertex count");
        } else if (head == "edge") {
            if (!saw_vertices)
                throw ParseError(line_no, tokens[0].column, "edge record before 'vertices:' header");
            if (tokens.size() != 4 && tokens.size() != 5)
                throw ParseError(line_no, tokens[0].column,
                                 "expected 'edge <u> <v> <const> [<eps>]'");
            saw_record = true;
            Edge edge;
            edge.u = parse_int(tokens[1], line_no, "endpoint");
            edge.v = parse_int(tokens[2], line_no, "endpoint");
            edge.cost.base = parse_rat(tokens[3], line_no, "cost");
            if (tokens.size() == 5)
                edge.cost.eps_coeff = parse_rat(tokens[4], line_no, "eps coefficient");
            instance.game.edges.push_back(std::move(edge));
        } else if (head == "player") {
            if (!saw_vertices)
                throw ParseError(line_no, tokens[0].column,
                                 "player record before 'vertices:' header");
            if (tokens.size() != 3)
                throw ParseError(line_no, tokens[0].column, "expected 'player <s> <t>'");
            saw_record = true;
            Player player;
            player.source = parse_int(tokens[1], line_no, "terminal");
            player.target = parse_int(tokens[2], line_no, "terminal");
            instance.game.players.push_back(player);
        } else {
            throw ParseError(line_no, tokens[0].column, "unknown directive '" + head + "'");
        }
    }
    if (!saw_vertices) throw ParseError(line_no + 1, 1, "missing 'vertices:' header");
    return instance;
}

std::string serialize_instance(const Instance& instance) {
    std::ostringstream out;
    if (!instance.name.empty()) out << "name: " << instance.name << "\n";
    if (!instance.note.empty()) out << "note: " << instance.note << "\n";
    out << "directed: " << (instance.game.directed ? "true" : "false") << "\n";
    out << "vertices: " << instance.game.vertex_count << "\n";
    for (const Edge& edge : instance.game.edges) {
        out << "edge " << edge.u << " " << edge.v << " " << rational_str(edge.cost.base);
        if (edge.cost.eps_coeff != 0) out << " " << rational_str(edge.cost.eps_coeff);
        out << "\n";
    }
    for (const Player& player : instance.game.players)
        out << "player " << player.source << " " << player.target << "\n";
    return out.str();
}

std::string instance_digest(const Instance& instance) {
    std::string bytes = serialize_instance(instance);
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out = "fnv1a64:";
    for (int shift = 60; shift >= 0; shift -= 4)
        out.push_back(hex[(hash >> shift) & 0xf]);
    return out;
}

}  // namespace sndg
