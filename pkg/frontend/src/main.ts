import { Api } from "./api.js";
import { createApp } from "./app.js";

createApp(document, new Api(""), { pollIntervalMs: 1000 });
