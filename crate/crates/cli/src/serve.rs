use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use tracing::info;
use vida_streamer::server::{serve, ServerOptions};
use vida_streamer::{Engine, Hub};

use crate::ServeArgs;

pub fn run(args: &ServeArgs) -> anyhow::Result<ExitCode> {
    crate::init_logging("info");
    let cfg = args.common.engine_config()?;
    let listen = args.listen.clone().unwrap_or_else(|| cfg.listen_addr.clone());
    let engine = Engine::load(cfg, args.common.assets_dir()).context("loading assets")?;
    let hub = Arc::new(Hub::new(Arc::new(engine)));
    let opts = ServerOptions {
        virtual_clock: args.virtual_clock,
        static_dir: args.static_dir.clone(),
    };
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(async move {
        let listener = tokio::net::TcpListener::bind(&listen)
            .await
            .with_context(|| format!("cannot listen on {listen}"))?;
        info!(
            "listening on {} ({} clock)",
            listener.local_addr()?,
            if opts.virtual_clock { "virtual" } else { "real" }
        );
        tokio::select! {
            r = serve(listener, hub, opts) => r.context("server stopped")?,
            _ = tokio::signal::ctrl_c() => info!("interrupted, shutting down"),
        }
        Ok(ExitCode::SUCCESS)
    })
}
