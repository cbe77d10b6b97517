use std::io::{self, Write};

use districts_core::circle::{CircleEvent, CircleObserver};
use districts_core::Instance;

/// Writes circle-growing events as `event<TAB>center<TAB>node<TAB>distance`
/// lines, with original node ids for both center and node.
///
/// The first write error is kept and reported by [`TraceWriter::finish`].
pub struct TraceWriter<'i, W: Write> {
    inst: &'i Instance<'i>,
    out: W,
    error: Option<io::Error>,
}

impl<'i, W: Write> TraceWriter<'i, W> {
    pub fn new(inst: &'i Instance<'i>, out: W) -> Self {
        TraceWriter {
            inst,
            out,
            error: None,
        }
    }

    pub fn finish(mut self) -> io::Result<()> {
        match self.error.take() {
            Some(e) => Err(e),
            None => self.out.flush(),
        }
    }
}

impl<W: Write> CircleObserver for TraceWriter<'_, W> {
    fn event(&mut self, event: CircleEvent) {
        if self.error.is_some() {
            return;
        }
        let (kind, center, node, dist) = match event {
            CircleEvent::Settle { center, node, dist } => ("settle", center, node, dist),
            CircleEvent::Match { center, node, dist } => ("match", center, node, dist),
            CircleEvent::Halt { center, node, dist } => ("halt", center, node, dist),
        };
        let g = self.inst.graph();
        if let Err(e) = writeln!(
            self.out,
            "{kind}\t{}\t{}\t{dist}",
            g.original_id(self.inst.centers()[center]),
            g.original_id(node)
        ) {
            self.error = Some(e);
        }
    }
}
