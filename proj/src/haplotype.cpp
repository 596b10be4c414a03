#include "rhm/haplotype.hpp"

#include <charconv>
#include <sstream>

#include "rhm/errors.hpp"

namespace rhm {

namespace {

// Splits on commas and tabs; surrounding spaces are tolerated.
std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',' || ch == '\t') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    for (auto& f : out) {
        auto b = f.find_first_not_of(" \r");
        auto e = f.find_last_not_of(" \r");
        f = (b == std::string::npos) ? std::string{} : f.substr(b, e - b + 1);
    }
    return out;
}

int parse_allele(const std::string& field, int row, int col) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw parse_error("row " + std::to_string(row) + ", column " + std::to_string(col) +
                          ": allele '" + field + "' is not an integer" +
                          (field.find('.') != std::string::npos ? " (microvariants are unsupported)"
                                                                : ""));
    }
    return value;
}

}  // namespace

Database Database::with_appended(const Haplotype& h) const {
    if (records_.rows() > 0 && h.size() != records_.cols()) {
        throw config_error("haplotype has " + std::to_string(h.size()) + " loci, database has " +
                           std::to_string(records_.cols()));
    }
    Eigen::MatrixXi out(records_.rows() + 1, h.size());
    if (records_.rows() > 0) out.topRows(records_.rows()) = records_;
    out.row(out.rows() - 1) = h;
    return Database(out);
}

std::map<Haplotype, int, HaplotypeLess> Database::type_counts() const {
    std::map<Haplotype, int, HaplotypeLess> counts;
    for (Eigen::Index i = 0; i < size(); ++i) ++counts[record(i)];
    return counts;
}

Database parse_database(const std::string& text) {
    std::vector<std::vector<int>> rows;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    Eigen::Index loci = -1;
    while (std::getline(in, line)) {
        ++lineno;
        auto fields = split_fields(line);
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (!fields[0].empty() && fields[0][0] == '#') continue;
        if (loci < 0) loci = static_cast<Eigen::Index>(fields.size());
        if (static_cast<Eigen::Index>(fields.size()) != loci) {
            throw parse_error("row " + std::to_string(lineno) + ": expected " +
                              std::to_string(loci) + " fields, got " +
                              std::to_string(fields.size()));
        }
        std::vector<int> alleles(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            alleles[c] = parse_allele(fields[c], lineno, static_cast<int>(c + 1));
        }
        rows.push_back(std::move(alleles));
    }
    if (rows.empty()) throw parse_error("database is empty");
    Eigen::MatrixXi records(static_cast<Eigen::Index>(rows.size()), loci);
    for (Eigen::Index i = 0; i < records.rows(); ++i) {
        for (Eigen::Index k = 0; k < loci; ++k) records(i, k) = rows[i][k];
    }
    return Database(records);
}

std::string serialize_database(const Database& db) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < db.size(); ++i) {
        for (Eigen::Index k = 0; k < db.locus_count(); ++k) {
            if (k) out << ',';
            out << db.records()(i, k);
        }
        out << '\n';
    }
    return out.str();
}

FrequencySpectrum frequency_spectrum(const Database& db) {
    if (db.size() < 1) throw config_error("frequency spectrum of an empty database");
    FrequencySpectrum spec;
    spec.n = db.size();
    for (const auto& [h, m] : db.type_counts()) {
        ++spec.counts_of_counts[m];
        ++spec.distinct_types;
    }
    return spec;
}

std::string spectrum_csv(const FrequencySpectrum& spec) {
    std::ostringstream out;
    out << "m,N_m\n";
    for (const auto& [m, nm] : spec.counts_of_counts) out << m << ',' << nm << '\n';
    return out.str();
}

double relative_frequency(const Database& db, const Haplotype& h) {
    if (db.size() < 1) throw config_error("relative frequency on an empty database");
    if (h.size() != db.locus_count()) {
        throw config_error("haplotype has " + std::to_string(h.size()) + " loci, database has " +
                           std::to_string(db.locus_count()));
    }
    Eigen::Index hits = 0;
    for (Eigen::Index i = 0; i < db.size(); ++i) {
        if ((db.records().row(i).array() == h.array()).all()) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(db.size());
}

}  // namespace rhm
