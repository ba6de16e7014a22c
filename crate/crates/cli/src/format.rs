//! Deterministic numeric formatting for CSV output: 12 significant digits,
//! fixed notation where readable, scientific otherwise, lowercase `nan`.

pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0.000000000000".to_string();
    }
    let sci = format!("{:.11e}", x);
    let exp: i32 = sci
        .split_once('e')
        .map(|(_, e)| e.parse().unwrap())
        .unwrap();
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    } else {
        sci
    }
}
