#include "vre/grid_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "vre/csv.hpp"
#include "vre/errors.hpp"

namespace vre {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

struct AsciiHeader {
    std::size_t ncols = 0, nrows = 0;
    double xllcorner = 0, yllcorner = 0, cellsize = 0;
    double nodata = NumericGrid::kDefaultNodata;
};

AsciiHeader read_header(std::istream& in, const std::string& name) {
    AsciiHeader h;
    bool saw_ncols = false, saw_nrows = false, saw_cell = false;
    // Header lines are key value pairs; the body starts at the first
    // purely numeric line.
    for (int i = 0; i < 6; ++i) {
        std::streampos pos = in.tellg();
        std::string key;
        if (!(in >> key)) break;
        std::string lk = lower(key);
        if (lk == "ncols" || lk == "nrows" || lk == "xllcorner" || lk == "yllcorner" ||
            lk == "cellsize" || lk == "nodata_value") {
            double v;
            if (!(in >> v)) throw DataError(name + ": malformed ASCII grid header");
            if (lk == "ncols") { h.ncols = static_cast<std::size_t>(v); saw_ncols = true; }
            else if (lk == "nrows") { h.nrows = static_cast<std::size_t>(v); saw_nrows = true; }
            else if (lk == "xllcorner") h.xllcorner = v;
            else if (lk == "yllcorner") h.yllcorner = v;
            else if (lk == "cellsize") { h.cellsize = v; saw_cell = true; }
            else h.nodata = v;
        } else {
            in.seekg(pos);
            break;
        }
    }
    if (!saw_ncols || !saw_nrows || !saw_cell) {
        throw DataError(name + ": ASCII grid header missing ncols/nrows/cellsize");
    }
    return h;
}

}  // namespace

NumericGrid read_ascii_grid_stream(std::istream& in, const std::string& name) {
    const AsciiHeader h = read_header(in, name);
    GridSpec spec;
    spec.n_rows = h.nrows;
    spec.n_cols = h.ncols;
    spec.cell_size = h.cellsize;
    spec.origin_x = h.xllcorner + h.cellsize / 2.0;
    spec.origin_y = h.yllcorner + h.cellsize / 2.0;
    spec.validate();

    NumericGrid g(spec);
    g.set_nodata(h.nodata);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!(in >> g[i])) {
            throw DataError(name + ": ASCII grid body truncated at value " +
                            std::to_string(i));
        }
    }
    return g;
}

NumericGrid read_ascii_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open raster '" + path + "'");
    return read_ascii_grid_stream(in, path);
}

void write_ascii_grid_stream(const NumericGrid& g, std::ostream& out) {
    const GridSpec& s = g.spec();
    out << "ncols " << s.n_cols << "\n";
    out << "nrows " << s.n_rows << "\n";
    out << "xllcorner " << csv::format_number(s.origin_x - s.cell_size / 2.0) << "\n";
    out << "yllcorner " << csv::format_number(s.origin_y - s.cell_size / 2.0) << "\n";
    out << "cellsize " << csv::format_number(s.cell_size) << "\n";
    out << "NODATA_value " << csv::format_number(g.nodata()) << "\n";
    for (std::size_t r = 0; r < s.n_rows; ++r) {
        for (std::size_t c = 0; c < s.n_cols; ++c) {
            if (c) out << ' ';
            out << csv::format_number(g.at(r, c));
        }
        out << "\n";
    }
}

void write_ascii_grid(const NumericGrid& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write raster '" + path + "'");
    write_ascii_grid_stream(g, out);
}

CategoricalGrid read_ascii_categorical(const std::string& path) {
    NumericGrid g = read_ascii_grid(path);
    CategoricalGrid out(g.spec());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.is_nodata(i)) continue;
        const int code = static_cast<int>(std::lround(g[i]));
        out.set(i, code);
        if (out.legend().find(code) == out.legend().end()) {
            out.define(code, "class_" + std::to_string(code));
        }
    }
    return out;
}

void write_ascii_categorical(const CategoricalGrid& g, const std::string& path) {
    NumericGrid num(g.spec());
    for (std::size_t i = 0; i < g.size(); ++i) {
        num[i] = g.get(i) == CategoricalGrid::kNodata ? num.nodata()
                                                     : static_cast<double>(g.get(i));
    }
    write_ascii_grid(num, path);
}

std::vector<PointSample> read_point_csv(const std::string& path) {
    const csv::Table t = csv::read_file(path);
    const std::size_t cx = t.column("x"), cy = t.column("y"), cv = t.column("value");
    const std::size_t cn = t.column_or_npos("votes");
    std::vector<PointSample> out;
    out.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        PointSample p;
        p.x = csv::to_double(row.at(cx), path);
        p.y = csv::to_double(row.at(cy), path);
        p.value = csv::to_double(row.at(cv), path);
        if (cn != csv::Table::npos) p.votes = csv::to_long(row.at(cn), path);
        out.push_back(p);
    }
    return out;
}

NumericGrid rasterize_points(const std::vector<PointSample>& pts, const GridSpec& spec,
                             NumericGrid* votes_out) {
    spec.validate();
    NumericGrid sum(spec, 0.0), n(spec, 0.0), votes(spec, 0.0);
    for (const auto& p : pts) {
        const long col = std::lround((p.x - spec.origin_x) / spec.cell_size);
        const long row_from_bottom = std::lround((p.y - spec.origin_y) / spec.cell_size);
        if (col < 0 || col >= static_cast<long>(spec.n_cols) || row_from_bottom < 0 ||
            row_from_bottom >= static_cast<long>(spec.n_rows)) {
            continue;
        }
        const std::size_t r = spec.n_rows - 1 - static_cast<std::size_t>(row_from_bottom);
        const std::size_t i = spec.index(r, static_cast<std::size_t>(col));
        sum[i] += p.value;
        n[i] += 1.0;
        votes[i] += static_cast<double>(p.votes);
    }
    NumericGrid out(spec);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = n[i] > 0.0 ? sum[i] / n[i] : out.nodata();
    }
    if (votes_out) *votes_out = votes;
    return out;
}

}  // namespace vre
