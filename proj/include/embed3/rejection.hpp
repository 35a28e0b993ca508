#ifndef EMBED3_REJECTION_HPP
#define EMBED3_REJECTION_HPP

#include <stdexcept>
#include <string>

namespace embed3 {

/// Input that is well-formed but outside the class the pipeline handles.
class Rejection : public std::runtime_error
{
public:
    Rejection(std::string reason, std::string detail = {})
        : std::runtime_error(detail.empty() ? reason : reason + ": " + detail), reason_(std::move(reason))
    {
    }

    /// Short stable reason, e.g. "disconnected link".
    const std::string& reason() const { return reason_; }

private:
    std::string reason_;
};

} // namespace embed3

#endif
