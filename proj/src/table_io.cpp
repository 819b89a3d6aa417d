#include "symplan/table_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace symplan {

namespace {

void write_array(std::ostream& out, const std::vector<double>& values) {
    out << '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << ',';
        out << format_double(values[i]);
    }
    out << ']';
}

std::vector<double> read_array(const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_array())
        throw std::runtime_error(std::string("value table: missing array '") + key + "'");
    return doc[key].get<std::vector<double>>();
}

template <class T>
T read_scalar(const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number())
        throw std::runtime_error(std::string("value table: missing number '") + key + "'");
    return doc[key].get<T>();
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_value_table(std::ostream& out, const ValueTable& table, const nlohmann::json& provenance) {
    out << "{\n";
    out << "  \"lambda\": " << format_double(table.cost.lambda) << ",\n";
    out << "  \"R\": " << format_double(table.cost.R) << ",\n";
    out << "  \"epsilon\": " << format_double(table.cost.epsilon) << ",\n";
    out << "  \"n1\": " << table.n1 << ",\n";
    out << "  \"n2\": " << table.n2 << ",\n";
    out << "  \"disturbance\": {\"outcomes\": [";
    for (std::size_t i = 0; i < table.disturbance.outcomes.size(); ++i) {
        const Vec2& w = table.disturbance.outcomes[i];
        if (i) out << ',';
        out << '[' << format_double(w.x) << ',' << format_double(w.y) << ']';
    }
    out << "], \"probabilities\": ";
    write_array(out, table.disturbance.probabilities);
    out << "},\n";
    out << "  \"d_edges\": ";
    write_array(out, table.grid.d_edges());
    out << ",\n  \"e_edges\": ";
    write_array(out, table.grid.e_edges());
    out << ",\n  \"theta_edges\": ";
    write_array(out, table.grid.theta_edges());
    out << ",\n  \"coefficients\": ";
    write_array(out, table.coefficients);
    if (!provenance.is_null()) out << ",\n  \"provenance\": " << provenance.dump();
    out << "\n}\n";
}

void write_value_table_file(const std::string& path, const ValueTable& table, const nlohmann::json& provenance) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_value_table(out, table, provenance);
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

ValueTable read_value_table(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("value table: invalid JSON: ") + e.what());
    }
    CostParams cost{read_scalar<double>(doc, "lambda"), read_scalar<double>(doc, "R"),
                    read_scalar<double>(doc, "epsilon")};
    cost.validate();

    DisturbanceModel dist;
    dist.n2 = read_scalar<int>(doc, "n2");
    if (!doc.contains("disturbance") || !doc["disturbance"].is_object())
        throw std::runtime_error("value table: missing object 'disturbance'");
    const auto& jd = doc["disturbance"];
    dist.probabilities = read_array(jd, "probabilities");
    if (!jd.contains("outcomes") || !jd["outcomes"].is_array())
        throw std::runtime_error("value table: missing array 'disturbance.outcomes'");
    for (const auto& pair : jd["outcomes"]) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::runtime_error("value table: disturbance outcome must be [x, y]");
        dist.outcomes.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    try {
        dist.validate();
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("value table: ") + e.what());
    }

    ValueTable table{PartitionGrid(read_array(doc, "d_edges"), read_array(doc, "e_edges"),
                                   read_array(doc, "theta_edges")),
                     read_array(doc, "coefficients"), cost, read_scalar<int>(doc, "n1"), dist.n2, dist};
    if (table.coefficients.size() != table.grid.cell_count())
        throw std::runtime_error("value table: coefficient count does not match the grid");
    return table;
}

ValueTable read_value_table_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_value_table(in);
}

}  // namespace symplan
