//! JSON file helpers. Floats are written in shortest round-trip form, so
//! every numeric payload reads back bit-exactly.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::Result;
use crate::tensor::Tensor;

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn read_tensor(path: impl AsRef<Path>) -> Result<Tensor> {
    read_json(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_round_trip_is_bit_exact() {
        let entries: Vec<f64> = (0..16).map(|k| (k as f64 + 0.1).sqrt() / 3.0 - 0.7).collect();
        let t = Tensor::new(4, 2, entries).unwrap();
        let dir = std::env::temp_dir().join(format!("ptensor-io-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("t.json");
        write_json(&path, &t).unwrap();
        let back = read_tensor(&path).unwrap();
        let bits = |t: &Tensor| t.entries().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&t), bits(&back));
        fs::remove_dir_all(&dir).unwrap();
    }
}
