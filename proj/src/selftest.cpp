#include "combicodec/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <iomanip>
#include <sstream>

namespace combicodec {

namespace {

struct TrialOutcome {
    bool ok = false;
    std::string why;
};

TrialOutcome run_trial(const CodingJob& job, bool inject_fault) {
    try {
        EncodedBlob blob = encode(job.context, job.object);
        const double ic = information_content(job.context, job.object);
        if (static_cast<double>(blob.bit_length) > ic + 2.0) {
            std::ostringstream s;
            s << "length " << blob.bit_length << " exceeds ic " << ic << " + 2";
            return {false, s.str()};
        }
        if (inject_fault) {
            if (blob.bit_length == 0) return {false, "injected fault (empty payload)"};
            blob.payload[0] ^= 0x80;
        }
        if (decode(job.context, blob) != job.object) return {false, "decoded object differs"};
        if (inject_fault) return {false, "injected fault went unnoticed by the decoder"};
        return {true, {}};
    } catch (const std::exception& e) {
        return {false, e.what()};
    }
}

SelftestCheck round_trip_check(Model model, const SelftestOptions& options) {
    const auto jobs = random_jobs(model, options.random_trials,
                                  options.seed + static_cast<std::uint64_t>(model), options.limits);
    std::vector<TrialOutcome> outcomes(jobs.size());
    const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        outcomes[static_cast<std::size_t>(i)] = run_trial(jobs[static_cast<std::size_t>(i)], options.inject_fault);

    SelftestCheck check;
    check.name = "round trip + length bound: " + std::string(model_name(model));
    const auto failed = std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return !o.ok; });
    check.passed = failed == 0;
    std::ostringstream s;
    s << (jobs.size() - static_cast<std::size_t>(failed)) << "/" << jobs.size() << " trials";
    if (failed > 0) {
        const auto first = std::find_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return !o.ok; });
        s << "; first failure: " << first->why;
    }
    check.detail = s.str();
    return check;
}

SelftestCheck from_summary(const OracleSummary& summary, const std::string& prefix) {
    SelftestCheck check;
    check.name = prefix + summary.name;
    check.passed = summary.ok();
    std::ostringstream s;
    s << summary.contexts << " contexts, " << summary.objects << " objects";
    if (!summary.ok()) s << "; " << summary.failures << " failures; " << summary.details.front();
    check.detail = s.str();
    return check;
}

}  // namespace

bool SelftestResult::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

SelftestResult run_selftest(const SelftestOptions& options, std::ostream& log) {
    SelftestResult result;
    const auto start = std::chrono::steady_clock::now();
    auto record = [&](SelftestCheck check) {
        log << (check.passed ? "PASS " : "FAIL ") << check.name << " (" << check.detail << ")\n";
        result.checks.push_back(std::move(check));
    };
    auto guarded = [&](const std::string& name, auto&& fn) {
        try {
            record(fn());
        } catch (const std::exception& e) {
            record({name, false, e.what()});
        }
    };

    for (Model model : kAllModels)
        guarded("oracle: " + std::string(model_name(model)),
                [&] { return from_summary(check_model(model, options.budget), "oracle: "); });
    guarded("oracle: sequence split", [&] { return from_summary(check_sequence_split(options.budget), "oracle: "); });
    guarded("oracle: adaptive relation",
            [&] { return from_summary(check_adaptive_permutation_relation(options.budget), "oracle: "); });
    for (Model model : kAllModels) record(round_trip_check(model, options));

    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    const auto passed = std::count_if(result.checks.begin(), result.checks.end(), [](const auto& c) { return c.passed; });
    log << passed << "/" << result.checks.size() << " checks passed in " << std::fixed << std::setprecision(2)
        << elapsed.count() << " s\n";
    return result;
}

}  // namespace combicodec
