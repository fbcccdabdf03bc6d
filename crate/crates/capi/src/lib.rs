//! C ABI surface. Opaque handles, integer status codes, JSON out-strings.
