//! `ran-v1` JSON: `{"format":"ran-v1","n":<int>,"choices":[<int>,...]}`,
//! compact, UTF-8, keys in exactly that order.

use super::{FaceId, Ran, RanError};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

pub const FORMAT_TAG: &str = "ran-v1";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RanFile {
    pub format: String,
    pub n: u64,
    pub choices: Vec<u64>,
}

impl Ran {
    pub fn to_json(&self) -> String {
        let mut out = String::with_capacity(32 + 8 * self.n());
        write!(out, "{{\"format\":\"{FORMAT_TAG}\",\"n\":{},\"choices\":[", self.n()).unwrap();
        for (i, c) in self.choices().iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{c}").unwrap();
        }
        out.push_str("]}");
        out
    }

    pub fn serialize(&self) -> Vec<u8> {
        self.to_json().into_bytes()
    }

    pub fn deserialize(bytes: &[u8]) -> Result<Ran, RanError> {
        let file: RanFile = serde_json::from_slice(bytes).map_err(|e| RanError::Malformed {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let at_start = |message: String| RanError::Malformed {
            line: 1,
            column: 1,
            message,
        };
        if file.format != FORMAT_TAG {
            return Err(at_start(format!("unsupported format {:?}", file.format)));
        }
        if file.n != file.choices.len() as u64 {
            return Err(at_start(format!(
                "n = {} but {} choices given",
                file.n,
                file.choices.len()
            )));
        }
        let mut choices = Vec::with_capacity(file.choices.len());
        for (index, &c) in file.choices.iter().enumerate() {
            let face = FaceId::try_from(c).map_err(|_| RanError::InvalidChoice { index, face: c })?;
            choices.push(face);
        }
        Ran::from_choices(&choices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instances_are_bit_exact() {
        assert_eq!(
            Ran::generate(0, 5).to_json(),
            r#"{"format":"ran-v1","n":0,"choices":[]}"#
        );
        assert_eq!(
            Ran::generate(1, 5).to_json(),
            r#"{"format":"ran-v1","n":1,"choices":[0]}"#
        );
        assert_eq!(
            Ran::from_choices(&[0, 1]).unwrap().to_json(),
            r#"{"format":"ran-v1","n":2,"choices":[0,1]}"#
        );
    }

    #[test]
    fn round_trip_hundred_instances() {
        for seed in 0..100 {
            let ran = Ran::generate((seed * 7 % 90) as usize, seed);
            let bytes = ran.serialize();
            assert_eq!(Ran::deserialize(&bytes).unwrap(), ran);
        }
    }

    #[test]
    fn whitespace_is_accepted_on_input() {
        let ran = Ran::deserialize(b"{ \"format\": \"ran-v1\",\n \"n\": 2, \"choices\": [0, 3] }").unwrap();
        assert_eq!(ran.choices(), &[0, 3]);
    }

    #[test]
    fn malformed_inputs_report_positions() {
        match Ran::deserialize(b"{\"format\":\"ran-v1\",\n\"n\":1,\"choices\":[0,]}") {
            Err(RanError::Malformed { line, column, .. }) => {
                assert_eq!(line, 2);
                assert!(column > 1);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            Ran::deserialize(br#"{"format":"ran-v2","n":0,"choices":[]}"#),
            Err(RanError::Malformed { .. })
        ));
        assert!(matches!(
            Ran::deserialize(br#"{"format":"ran-v1","n":2,"choices":[0]}"#),
            Err(RanError::Malformed { .. })
        ));
        assert!(matches!(
            Ran::deserialize(br#"{"format":"ran-v1","n":1,"choices":[0],"x":1}"#),
            Err(RanError::Malformed { .. })
        ));
        assert!(matches!(
            Ran::deserialize(br#"{"format":"ran-v1","n":1,"choices":[1.5]}"#),
            Err(RanError::Malformed { .. })
        ));
        assert_eq!(
            Ran::deserialize(br#"{"format":"ran-v1","n":2,"choices":[0,0]}"#),
            Err(RanError::InvalidChoice { index: 1, face: 0 })
        );
    }
}
