use crate::error::{Error, Result};

/// A payload split into `M` zero-padded fragments of exactly `N` bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageFraming {
    payload: Vec<u8>,
    fragments: Vec<Vec<u8>>,
}

impl MessageFraming {
    pub fn payload(&self) -> &[u8] {
        &self.payload
    }

    pub fn fragments(&self) -> &[Vec<u8>] {
        &self.fragments
    }

    pub fn fragment_bytes(&self) -> usize {
        self.fragments.first().map_or(0, Vec::len)
    }
}

/// Fragment `i` holds payload bytes `[i·N, (i+1)·N)`, padded with `0x00`.
pub fn frame_message(
    message: &[u8],
    channels: usize,
    fragment_bytes: usize,
) -> Result<MessageFraming> {
    let capacity = channels * fragment_bytes;
    if message.len() > capacity {
        return Err(Error::MessageTooLong {
            len: message.len(),
            capacity,
        });
    }
    let mut padded = message.to_vec();
    padded.resize(capacity, 0);
    let fragments = if fragment_bytes == 0 {
        vec![Vec::new(); channels]
    } else {
        padded
            .chunks_exact(fragment_bytes)
            .map(<[u8]>::to_vec)
            .collect()
    };
    Ok(MessageFraming {
        payload: message.to_vec(),
        fragments,
    })
}

/// Concatenates fragments and strips trailing `0x00` padding.
pub fn unframe(fragments: &[Vec<u8>]) -> Vec<u8> {
    let mut out = fragments.concat();
    let end = out.iter().rposition(|&b| b != 0).map_or(0, |i| i + 1);
    out.truncate(end);
    out
}
