#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mispec {

enum class Status { Pass, Fail, Skip };

inline const char* to_string(Status s) {
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
    }
    return "?";
}

struct Check {
    std::string id;
    Status status = Status::Pass;
    std::size_t cases = 0; // arguments examined
    std::string detail;    // first counterexample, or skip reason
};

struct Report {
    std::string subject;
    std::vector<Check> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (c.status == Status::Fail) return false;
        return true;
    }
    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& c : checks) n += c.status == Status::Fail;
        return n;
    }
    void skip(std::string id, std::string reason) { checks.push_back({std::move(id), Status::Skip, 0, std::move(reason)}); }
    void append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
};

// Accumulates one check; the first failure message is kept.
class CheckBuilder {
public:
    explicit CheckBuilder(std::string id) : check_{std::move(id), Status::Pass, 0, {}} {}

    bool expect(bool cond, const std::string& what) {
        ++check_.cases;
        if (!cond && check_.status != Status::Fail) {
            check_.status = Status::Fail;
            check_.detail = what;
        }
        return cond;
    }
    template <class F>
    bool expect_lazy(bool cond, F&& describe) {
        ++check_.cases;
        if (!cond && check_.status != Status::Fail) {
            check_.status = Status::Fail;
            check_.detail = describe();
        }
        return cond;
    }
    Check done() const { return check_; }
    void into(Report& r) const { r.checks.push_back(check_); }

private:
    Check check_;
};

} // namespace mispec
