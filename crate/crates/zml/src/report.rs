//! Machine-readable report emission.
//!
//! Hand-rolled JSON so that every floating-point number is serialized with
//! exactly 17 significant digits (round-trip safe, bit-identical across
//! runs); serde_json's shortest-representation floats would not satisfy
//! that contract. NaN and infinities become null.

#[derive(Debug, Clone)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    Num(f64),
    Str(String),
    Arr(Vec<Value>),
    Obj(Vec<(&'static str, Value)>),
}

/// 17 significant digits, or "null" for non-finite values. Negative zero is
/// normalized: a vanishing main term reads 0, not -0.
pub fn float_repr(x: f64) -> String {
    if x == 0.0 {
        "0.0000000000000000e0".to_string()
    } else if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

pub fn to_json(v: &Value) -> String {
    let mut out = String::new();
    write_json(v, &mut out);
    out
}

fn write_json(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Int(i) => out.push_str(&i.to_string()),
        Value::Num(x) => out.push_str(&float_repr(*x)),
        Value::Str(s) => {
            out.push('"');
            out.push_str(&escape(s));
            out.push('"');
        }
        Value::Arr(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_json(item, out);
            }
            out.push(']');
        }
        Value::Obj(fields) => {
            out.push('{');
            for (i, (k, item)) in fields.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('"');
                out.push_str(k);
                out.push_str("\":");
                write_json(item, out);
            }
            out.push('}');
        }
    }
}

/// CSV cell for one value: floats at 17 significant digits, strings quoted
/// only when they contain separators.
pub fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Int(i) => i.to_string(),
        Value::Num(x) => float_repr(*x),
        Value::Str(s) => {
            if s.contains(',') || s.contains('"') || s.contains('\n') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.clone()
            }
        }
        Value::Arr(_) | Value::Obj(_) => panic!("nested values have no CSV cell form"),
    }
}

/// Render a fixed-column CSV document: header then one line per row.
pub fn to_csv(header: &[&str], rows: &[Vec<Value>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        let cells: Vec<String> = row.iter().map(csv_cell).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_17_significant_digits() {
        assert_eq!(float_repr(1000.0), "1.0000000000000000e3");
        assert_eq!(float_repr(-1.4603545088095868), "-1.4603545088095868e0");
        // 1e-9 is not exactly representable; 17 digits expose that
        assert_eq!(float_repr(1e-9), "1.0000000000000001e-9");
        assert_eq!(float_repr(0.5), "5.0000000000000000e-1");
        assert_eq!(float_repr(f64::NAN), "null");
    }

    #[test]
    fn float_repr_round_trips() {
        for &x in &[
            std::f64::consts::PI,
            -694.7234000001,
            1.0 / 3.0,
            2.2250738585072014e-308,
        ] {
            let s = float_repr(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn json_shapes() {
        let v = Value::Obj(vec![
            ("command", Value::Str("landau".into())),
            ("x", Value::Num(2.0)),
            ("n", Value::Int(29)),
            (
                "checks",
                Value::Arr(vec![Value::Obj(vec![
                    ("name", Value::Str("a\"b".into())),
                    ("pass", Value::Bool(true)),
                    ("observed", Value::Null),
                ])]),
            ),
        ]);
        assert_eq!(
            to_json(&v),
            r#"{"command":"landau","x":2.0000000000000000e0,"n":29,"checks":[{"name":"a\"b","pass":true,"observed":null}]}"#
        );
    }

    #[test]
    fn csv_layout() {
        let doc = to_csv(
            &["name", "value"],
            &[
                vec![Value::Str("plain".into()), Value::Num(0.5)],
                vec![Value::Str("with,comma".into()), Value::Int(3)],
            ],
        );
        assert_eq!(
            doc,
            "name,value\nplain,5.0000000000000000e-1\n\"with,comma\",3\n"
        );
    }
}
