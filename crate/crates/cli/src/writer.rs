//! Double-buffered walk output.
//!
//! Records are formatted into one buffer while a background thread writes
//! the other. When the fill buffer reaches its capacity the two swap roles;
//! the swap blocks until the previous flush has finished.

use std::io::{self, Write};
use std::mem;
use std::sync::mpsc::{self, Receiver, SyncSender};
use std::thread::{self, JoinHandle};

use log::warn;
use walkforge::engine::{WalkRecord, WalkStatus};

pub const MIN_BUFFER_BYTES: usize = 1 << 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    /// `id<TAB>status<TAB>v0 v1 ...` per line.
    #[default]
    Text,
    /// Little-endian `u64 id, u8 status, u32 len, len x u32 vertex`.
    Binary,
}

pub struct WalkWriter<W: Write + Send + 'static> {
    format: OutputFormat,
    capacity: usize,
    fill: Vec<u8>,
    to_flush: Option<SyncSender<Vec<u8>>>,
    returned: Receiver<Vec<u8>>,
    flusher: Option<JoinHandle<io::Result<W>>>,
    warned: bool,
}

impl<W: Write + Send + 'static> WalkWriter<W> {
    /// `buffer_bytes` is the size of each of the two buffers.
    pub fn new(sink: W, format: OutputFormat, buffer_bytes: usize) -> io::Result<Self> {
        if buffer_bytes < MIN_BUFFER_BYTES {
            return Err(io::Error::new(
                io::ErrorKind::InvalidInput,
                format!("output buffer of {buffer_bytes} bytes is below the {MIN_BUFFER_BYTES}-byte minimum"),
            ));
        }
        let (to_flush, incoming) = mpsc::sync_channel::<Vec<u8>>(1);
        let (give_back, returned) = mpsc::sync_channel::<Vec<u8>>(2);
        give_back.send(Vec::with_capacity(buffer_bytes)).expect("receiver is alive");
        let flusher = thread::Builder::new().name("walk-writer".into()).spawn(move || {
            let mut sink = sink;
            for mut buf in incoming {
                sink.write_all(&buf)?;
                buf.clear();
                // the writer may already be finishing; a dropped receiver is fine
                let _ = give_back.send(buf);
            }
            sink.flush()?;
            Ok(sink)
        })?;
        Ok(Self {
            format,
            capacity: buffer_bytes,
            fill: Vec::with_capacity(buffer_bytes),
            to_flush: Some(to_flush),
            returned,
            flusher: Some(flusher),
            warned: false,
        })
    }

    pub fn write_records(&mut self, records: &[WalkRecord]) -> io::Result<()> {
        for r in records {
            self.write_record(r)?;
        }
        Ok(())
    }

    pub fn write_record(&mut self, record: &WalkRecord) -> io::Result<()> {
        let before = self.fill.len();
        match self.format {
            OutputFormat::Text => {
                write!(self.fill, "{}\t{}\t", record.id, record.status)?;
                let mut first = true;
                for v in &record.path {
                    if !first {
                        self.fill.push(b' ');
                    }
                    first = false;
                    write!(self.fill, "{v}")?;
                }
                self.fill.push(b'\n');
            }
            OutputFormat::Binary => {
                self.fill.extend_from_slice(&record.id.to_le_bytes());
                self.fill.push(match record.status {
                    WalkStatus::Complete => 0,
                    WalkStatus::DeadEnd => 1,
                });
                self.fill.extend_from_slice(&(record.path.len() as u32).to_le_bytes());
                for v in &record.path {
                    self.fill.extend_from_slice(&v.to_le_bytes());
                }
            }
        }
        let size = self.fill.len() - before;
        if size > self.capacity && !self.warned {
            self.warned = true;
            warn!("record {} takes {size} bytes, more than the {}-byte output buffer; growing it", record.id, self.capacity);
        }
        if self.fill.len() >= self.capacity {
            self.swap()?;
        }
        Ok(())
    }

    fn swap(&mut self) -> io::Result<()> {
        let full = mem::take(&mut self.fill);
        let sent = self.to_flush.as_ref().expect("writer not finished").send(full);
        match sent.ok().and_then(|()| self.returned.recv().ok()) {
            Some(mut empty) => {
                if empty.capacity() < self.capacity {
                    empty.reserve(self.capacity);
                }
                self.fill = empty;
                Ok(())
            }
            None => Err(self.join().err().unwrap_or_else(|| io::Error::other("output thread stopped"))),
        }
    }

    fn join(&mut self) -> io::Result<W> {
        self.to_flush = None;
        match self.flusher.take() {
            Some(h) => h.join().map_err(|_| io::Error::other("output thread panicked"))?,
            None => Err(io::Error::other("output already finished")),
        }
    }

    /// Writes whatever is buffered and returns the sink.
    pub fn finish(mut self) -> io::Result<W> {
        if !self.fill.is_empty() {
            let rest = mem::take(&mut self.fill);
            if let Some(tx) = &self.to_flush {
                let _ = tx.send(rest);
            }
        }
        self.join()
    }
}

impl<W: Write + Send + 'static> Drop for WalkWriter<W> {
    fn drop(&mut self) {
        self.to_flush = None;
        if let Some(h) = self.flusher.take() {
            let _ = h.join();
        }
    }
}
