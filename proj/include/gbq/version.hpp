#ifndef GBQ_VERSION_HPP
#define GBQ_VERSION_HPP

namespace gbq {
inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kRunSchema = "gbq.run.v1";
} // namespace gbq

#endif
