#include "mwt/io.hpp"

#include "mwt/spatial.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>

namespace mwt {

namespace {

std::string where(const std::string &name, std::size_t line) { return name + ":" + std::to_string(line) + ": "; }

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if(b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

std::vector<std::string> split(const std::string &s) {
    std::istringstream ss(s);
    std::vector<std::string> out;
    for(std::string tok; ss >> tok;)
        out.push_back(tok);
    return out;
}

double parse_double(const std::string &tok, const std::string &name, std::size_t line) {
    double v = 0.0;
    const char *b = tok.data();
    const char *e = tok.data() + tok.size();
    if(b != e && *b == '+')
        ++b;
    const auto [ptr, ec] = std::from_chars(b, e, v);
    if(ec != std::errc() || ptr != e || !std::isfinite(v))
        throw InputError(where(name, line) + "not a finite number: '" + tok + "'");
    return v;
}

std::uint64_t parse_uint(const std::string &tok, const std::string &name, std::size_t line) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if(ec != std::errc() || ptr != tok.data() + tok.size())
        throw InputError(where(name, line) + "not a non-negative integer: '" + tok + "'");
    return v;
}

class DuplicateCheck {
  public:
    void add(const Point &p, const std::string &name, std::size_t line) {
        const Key k{std::bit_cast<std::uint64_t>(p.x + 0.0), std::bit_cast<std::uint64_t>(p.y + 0.0)};
        const auto [it, fresh] = seen_.emplace(k, line);
        if(!fresh)
            throw InputError(where(name, line) + "duplicate point, same coordinates as line " +
                             std::to_string(it->second));
    }

  private:
    struct Key {
        std::uint64_t x, y;
        bool operator==(const Key &) const = default;
    };
    struct Hash {
        std::size_t operator()(const Key &k) const { return std::hash<std::uint64_t>{}(k.x * 0x9e3779b97f4a7c15ull ^ k.y); }
    };
    std::unordered_map<Key, std::size_t, Hash> seen_;
};

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

PointFormat parse_point_format(const std::string &s) {
    if(s == "auto")
        return PointFormat::Auto;
    if(s == "tsplib")
        return PointFormat::Tsplib;
    if(s == "xy")
        return PointFormat::Xy;
    throw std::invalid_argument("unknown point format '" + s + "' (expected tsplib, xy or auto)");
}

std::vector<Point> parse_tsplib(std::istream &in, const std::string &name) {
    std::string raw;
    std::size_t line = 0;
    std::uint64_t dimension = 0;
    bool have_dimension = false;
    std::string weight_type;
    bool in_coords = false;
    std::vector<Point> pts;
    DuplicateCheck dup;
    std::size_t section_line = 0;

    while(std::getline(in, raw)) {
        ++line;
        const std::string s = trim(raw);
        if(s.empty())
            continue;
        if(upper(s) == "EOF")
            break;
        if(!in_coords) {
            const auto colon = s.find(':');
            const std::string key = upper(trim(colon == std::string::npos ? s : s.substr(0, colon)));
            const std::string value = colon == std::string::npos ? std::string{} : trim(s.substr(colon + 1));
            if(key == "NODE_COORD_SECTION") {
                if(!have_dimension)
                    throw InputError(where(name, line) + "NODE_COORD_SECTION before DIMENSION");
                if(weight_type.empty())
                    throw InputError(where(name, line) + "missing EDGE_WEIGHT_TYPE");
                in_coords = true;
                section_line = line;
                pts.reserve(dimension);
            } else if(key == "DIMENSION") {
                dimension = parse_uint(value, name, line);
                have_dimension = true;
            } else if(key == "EDGE_WEIGHT_TYPE") {
                weight_type = upper(value);
                if(weight_type != "EUC_2D" && weight_type != "CEIL_2D" && weight_type != "ATT" && weight_type != "GEO")
                    throw InputError(where(name, line) + "unsupported EDGE_WEIGHT_TYPE '" + value + "'");
            } else if(key == "TYPE") {
                const std::string t = upper(value);
                if(t != "TSP" && t != "ATSP" && t != "HCP" && t != "TOUR")
                    throw InputError(where(name, line) + "unknown TYPE '" + value + "'");
            } else if(key == "NAME" || key == "COMMENT" || key == "NODE_COORD_TYPE" || key == "DISPLAY_DATA_TYPE" ||
                      key == "CAPACITY") {
                continue;
            } else if(colon == std::string::npos) {
                throw InputError(where(name, line) + "expected 'KEY : VALUE' header line, got '" + s + "'");
            }
            continue;
        }
        const auto tok = split(s);
        if(tok.size() != 3)
            throw InputError(where(name, line) + "expected 'id x y', got '" + s + "'");
        parse_uint(tok[0], name, line);
        const Point p{parse_double(tok[1], name, line), parse_double(tok[2], name, line)};
        dup.add(p, name, line);
        pts.push_back(p);
        if(pts.size() > dimension)
            throw InputError(where(name, line) + "more coordinates than DIMENSION " + std::to_string(dimension));
    }
    if(!in_coords)
        throw InputError(name + ": no NODE_COORD_SECTION");
    if(pts.size() != dimension)
        throw InputError(where(name, section_line) + "DIMENSION is " + std::to_string(dimension) + " but " +
                         std::to_string(pts.size()) + " coordinates follow");
    return pts;
}

std::vector<Point> parse_xy(std::istream &in, const std::string &name) {
    std::string raw;
    std::size_t line = 0;
    std::vector<Point> pts;
    DuplicateCheck dup;
    while(std::getline(in, raw)) {
        ++line;
        const std::string s = trim(raw);
        if(s.empty() || s[0] == '#')
            continue;
        const auto tok = split(s);
        if(tok.size() != 2)
            throw InputError(where(name, line) + "expected 'x y', got '" + s + "'");
        const Point p{parse_double(tok[0], name, line), parse_double(tok[1], name, line)};
        dup.add(p, name, line);
        pts.push_back(p);
    }
    return pts;
}

std::vector<Point> read_points(const std::string &path, PointFormat format) {
    std::ifstream in(path);
    if(!in)
        throw InputError(path + ": cannot open");
    if(format == PointFormat::Auto) {
        const bool tsp_ext = path.size() >= 4 && upper(path.substr(path.size() - 4)) == ".TSP";
        format = PointFormat::Xy;
        if(tsp_ext) {
            format = PointFormat::Tsplib;
        } else {
            std::string first;
            while(std::getline(in, first) && trim(first).empty()) {
            }
            if(trim(first).find(':') != std::string::npos)
                format = PointFormat::Tsplib;
            in.clear();
            in.seekg(0);
        }
    }
    return format == PointFormat::Tsplib ? parse_tsplib(in, path) : parse_xy(in, path);
}

void write_points_xy(std::ostream &out, std::span<const Point> points) {
    for(const Point &p : points)
        out << format_double(p.x) << ' ' << format_double(p.y) << '\n';
}

void write_edges(std::ostream &out, const EdgeFile &f) {
    out << "MWT " << f.n << ' ' << f.edges.size() << ' ' << format_double(f.weight) << '\n';
    for(const Edge &e : f.edges)
        out << e.a << ' ' << e.b << '\n';
}

void write_edges(const std::string &path, const EdgeFile &f) {
    std::ofstream out(path);
    if(!out)
        throw std::runtime_error(path + ": cannot open for writing");
    write_edges(out, f);
    if(!out)
        throw std::runtime_error(path + ": write failed");
}

EdgeFile read_edges(const std::string &path) {
    std::ifstream in(path);
    if(!in)
        throw InputError(path + ": cannot open");
    std::string raw;
    std::size_t line = 0;
    EdgeFile f;
    std::uint64_t m = 0;
    bool header = false;
    while(std::getline(in, raw)) {
        ++line;
        const auto tok = split(raw);
        if(tok.empty())
            continue;
        if(!header) {
            if(tok.size() != 4 || tok[0] != "MWT")
                throw InputError(where(path, line) + "expected header 'MWT n m weight'");
            f.n = static_cast<std::uint32_t>(parse_uint(tok[1], path, line));
            m = parse_uint(tok[2], path, line);
            f.weight = parse_double(tok[3], path, line);
            header = true;
            continue;
        }
        if(tok.size() != 2)
            throw InputError(where(path, line) + "expected 'src dst'");
        const auto a = parse_uint(tok[0], path, line), b = parse_uint(tok[1], path, line);
        if(a >= f.n || b >= f.n || a == b)
            throw InputError(where(path, line) + "vertex id out of range");
        f.edges.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)});
    }
    if(!header)
        throw InputError(path + ": empty edge file");
    if(f.edges.size() != m)
        throw InputError(path + ": header announces " + std::to_string(m) + " edges, found " +
                         std::to_string(f.edges.size()));
    return f;
}

void write_svg(std::ostream &out, std::span<const Point> points, std::span<const SvgEdge> edges,
               const SvgStyle &style) {
    if(edges.empty())
        throw std::invalid_argument("nothing to render: empty edge set");
    const BBox b = bounding_box(points);
    const double side = std::max({b.xmax - b.xmin, b.ymax - b.ymin, 1e-300});
    const double margin = 0.02 * side;
    const double x0 = b.xmin - margin, y0 = -b.ymax - margin;
    const double w = (b.xmax - b.xmin) + 2 * margin, h = (b.ymax - b.ymin) + 2 * margin;
    const double stroke = style.stroke * side;

    out << std::setprecision(17);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << x0 << ' ' << y0 << ' ' << w << ' ' << h
        << "\">\n";
    out << "<style>\n"
        << "line{stroke-width:" << stroke << ";stroke-linecap:round}\n"
        << ".edge{stroke:" << style.edge << "}\n"
        << ".possible{stroke:" << style.possible << "}\n"
        << ".certain{stroke:" << style.certain << "}\n"
        << ".hull{stroke:" << style.hull << "}\n"
        << "</style>\n";
    for(const SvgEdge &e : edges) {
        const char *cls = "edge";
        switch(e.cls) {
        case SvgClass::Edge:
            break;
        case SvgClass::Possible:
            cls = "possible";
            break;
        case SvgClass::Certain:
            cls = "certain";
            break;
        case SvgClass::Hull:
            cls = "hull";
            break;
        }
        const Point &p = points[e.edge.a], &q = points[e.edge.b];
        out << "<line class=\"" << cls << "\" x1=\"" << p.x << "\" y1=\"" << -p.y << "\" x2=\"" << q.x << "\" y2=\""
            << -q.y << "\"/>\n";
    }
    if(style.point_radius > 0.0) {
        const double r = style.point_radius * side;
        for(const Point &p : points)
            out << "<circle cx=\"" << p.x << "\" cy=\"" << -p.y << "\" r=\"" << r << "\"/>\n";
    }
    out << "</svg>\n";
}

void write_svg(const std::string &path, std::span<const Point> points, std::span<const SvgEdge> edges,
               const SvgStyle &style) {
    std::ofstream out(path);
    if(!out)
        throw std::runtime_error(path + ": cannot open for writing");
    write_svg(out, points, edges, style);
    if(!out)
        throw std::runtime_error(path + ": write failed");
}

} // namespace mwt
