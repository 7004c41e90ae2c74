//! JSON shapes shared by the result and report types.

use num_complex::Complex;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

/// Serializes a complex number as `{"re": …, "im": …}`.
pub(crate) fn complex<T: Serialize, S: Serializer>(
    z: &Complex<T>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}
