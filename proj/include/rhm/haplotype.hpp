#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

namespace rhm {

/// An r-locus haplotype: one integer repeat count per locus.
using Haplotype = Eigen::RowVectorXi;

/// Lexicographic order for haplotypes (shorter vectors sort first).
struct HaplotypeLess {
    bool operator()(const Haplotype& a, const Haplotype& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (Eigen::Index k = 0; k < a.size(); ++k) {
            if (a[k] != b[k]) return a[k] < b[k];
        }
        return false;
    }
};

/// An ordered i.i.d. sample of haplotypes, one record per row.
class Database {
  public:
    Database() = default;
    explicit Database(Eigen::MatrixXi records) : records_(std::move(records)) {}

    Eigen::Index size() const { return records_.rows(); }
    Eigen::Index locus_count() const { return records_.cols(); }
    const Eigen::MatrixXi& records() const { return records_; }
    Haplotype record(Eigen::Index i) const { return records_.row(i); }

    /// Database with `h` appended as the last record.
    Database with_appended(const Haplotype& h) const;

    /// Multiplicity of each distinct haplotype, keyed lexicographically.
    std::map<Haplotype, int, HaplotypeLess> type_counts() const;

  private:
    Eigen::MatrixXi records_;
};

/// Count-of-counts reduction of a database: N_m = number of distinct
/// types observed exactly m times.
struct FrequencySpectrum {
    Eigen::Index n = 0;                    // total sample size
    std::map<int, int> counts_of_counts;   // m -> N_m, only nonzero entries
    int distinct_types = 0;

    int count(int m) const {
        auto it = counts_of_counts.find(m);
        return it == counts_of_counts.end() ? 0 : it->second;
    }
    int singletons() const { return count(1); }
    int doubletons() const { return count(2); }
};

/// Parses comma- or tab-delimited integer rows, one haplotype per line.
/// Lines starting with `#` and blank lines are skipped. Ragged rows,
/// non-integer alleles (e.g. microvariants "13.2") and empty input are
/// rejected.
Database parse_database(const std::string& text);

/// Inverse of parse_database (comma-delimited, no comments).
std::string serialize_database(const Database& db);

FrequencySpectrum frequency_spectrum(const Database& db);

/// Two-column CSV `m,N_m`, ascending in m, with a header line.
std::string spectrum_csv(const FrequencySpectrum& spec);

/// Fraction of records equal to h. Zero for an unseen type.
double relative_frequency(const Database& db, const Haplotype& h);

}  // namespace rhm
