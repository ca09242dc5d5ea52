//! Payload input, JSON and CSV output.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::failure::Failure;

pub fn read_payload<T: DeserializeOwned>(file: Option<&Path>) -> Result<T, Failure> {
    let mut text = String::new();
    match file {
        Some(path) if path != Path::new("-") => {
            File::open(path)
                .and_then(|mut f| f.read_to_string(&mut text))
                .map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display())))?;
        }
        _ => {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::config(format!("cannot read standard input: {e}")))?;
        }
    }
    serde_json::from_str(&text).map_err(|e| Failure::config(format!("invalid payload: {e}")))
}

pub fn open_output(path: &Path) -> Result<Box<dyn Write>, Failure> {
    if path == Path::new("-") {
        Ok(Box::new(BufWriter::new(io::stdout().lock())))
    } else {
        let file = File::create(path)
            .map_err(|e| Failure::config(format!("cannot create {}: {e}", path.display())))?;
        Ok(Box::new(BufWriter::new(file)))
    }
}

/// Pretty JSON with every float in 17 significant digits, so values
/// round-trip exactly and output is byte-stable across platforms.
struct Digits17 {
    inner: PrettyFormatter<'static>,
}

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*);)*) => {
        $(fn $name<W: ?Sized + Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
            self.inner.$name(w $(, $arg)*)
        })*
    };
}

impl Formatter for Digits17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }

    delegate! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        begin_object_value();
        end_object_value();
    }
}

pub fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let mut ser = serde_json::Serializer::with_formatter(
        &mut *out,
        Digits17 {
            inner: PrettyFormatter::new(),
        },
    );
    value
        .serialize(&mut ser)
        .map_err(|e| Failure::config(format!("cannot serialize output: {e}")))?;
    writeln!(out).and_then(|_| out.flush()).map_err(write_error)
}

pub fn write_error(e: io::Error) -> Failure {
    Failure::config(format!("cannot write output: {e}"))
}

/// 12 significant digits; `nan` for an undefined value.
pub fn csv_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_owned()
    } else {
        format!("{x:.11e}")
    }
}
